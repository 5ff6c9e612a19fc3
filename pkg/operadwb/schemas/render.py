from pydantic import BaseModel, Field

from operadwb.config import settings


class RenderOptions(BaseModel):
    size: int = Field(default_factory=lambda: settings.RENDER_SIZE, ge=32)
    margin: int = Field(default=16, ge=0)
    labels: bool = True
    strip_height: int = Field(default=48, ge=8)  # height of the band used for d = 1

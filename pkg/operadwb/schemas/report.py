from pydantic import BaseModel, Field


class LawViolation(BaseModel):
    law: str
    profile: str
    witnesses: list[str] = Field(default_factory=list)


class LawReport(BaseModel):
    instance: str
    family: str
    seed: int
    budget: int
    checked: int = 0
    violations: list[LawViolation] = Field(default_factory=list)
    skipped: list[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, law: str, profile, witnesses: list[str]) -> None:
        self.violations.append(LawViolation(law=law, profile=str(profile), witnesses=witnesses))

    def skip(self, reason: str) -> None:
        if reason not in self.skipped:
            self.skipped.append(reason)

    def summary(self) -> str:
        noun = "violation" if len(self.violations) == 1 else "violations"
        return f"{len(self.violations)} {noun}"

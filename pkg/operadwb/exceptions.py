PARSE_ERROR = 1
DOMAIN_ERROR = 2
INVARIANT_BREACH = 3


class OperadError(Exception):
    def __init__(self, detail: str, exit_code: int = DOMAIN_ERROR):
        super().__init__(detail)
        self.detail = detail
        self.exit_code = exit_code


class ColourMismatch(OperadError):
    def __init__(self, slot: int, expected: str, found: str):
        super().__init__(f"Colour mismatch at slot {slot}: expected {expected}, found {found}")
        self.slot = slot


class ProfileArityMismatch(OperadError):
    def __init__(self, expected: int, found: int):
        super().__init__(f"Permutation of length {found} cannot act on an element of arity {expected}")


class SlotOutOfRange(OperadError):
    def __init__(self, slot: int, arity: int):
        super().__init__(f"Slot {slot} is out of range for arity {arity}")
        self.slot = slot


class InvalidPermutation(OperadError):
    def __init__(self, images: tuple[int, ...]):
        super().__init__(f"{list(images)} is not a permutation")


class InvalidArgument(OperadError):
    def __init__(self, detail: str):
        super().__init__(detail)


class TruncationExceeded(OperadError):
    def __init__(self, arity: int, k: int):
        super().__init__(f"Result of arity {arity} lies outside the truncation at {k}")


class EdgeKindError(OperadError):
    def __init__(self, vid: int):
        super().__init__(f"Vertex {vid} has no inner output edge to contract")


class UnknownVertex(OperadError):
    def __init__(self, vid: int):
        super().__init__(f"Vertex {vid} does not belong to the tree")


class InvalidCube(OperadError):
    def __init__(self, detail: str):
        super().__init__(f"Invalid little cube: {detail}")


class MissingColourTags(OperadError):
    def __init__(self):
        super().__init__("Swiss-Cheese membership needs colour tags on every cube")


class UnsupportedDimension(OperadError):
    def __init__(self, d: int):
        super().__init__(f"Rendering supports dimensions 1 and 2, got {d}")


class TieLimitExceeded(OperadError):
    def __init__(self, arrangements: int, limit: int):
        super().__init__(f"{arrangements} arrangements of identical subtrees exceed the canonical search limit of {limit}")


class LabelProfileError(OperadError):
    def __init__(self, vid: int, detail: str):
        super().__init__(f"Label of vertex {vid} does not fit its edges: {detail}")


class ParameterError(OperadError):
    def __init__(self, detail: str):
        super().__init__(detail)


class ConstructionError(OperadError):
    def __init__(self, detail: str):
        super().__init__(detail)


class UnsupportedInput(OperadError):
    def __init__(self, detail: str):
        super().__init__(detail)


class UnknownInstance(OperadError):
    def __init__(self, name: str):
        super().__init__(f"Unknown instance: {name}")


class DocumentParseError(OperadError):
    def __init__(self, detail: str):
        super().__init__(f"Malformed document: {detail}", PARSE_ERROR)


class InvariantBreach(OperadError):
    def __init__(self, detail: str):
        super().__init__(detail, INVARIANT_BREACH)


class RewriteLimitExceeded(InvariantBreach):
    def __init__(self, system: str, steps: int):
        super().__init__(f"{system} did not reach a normal form within {steps} steps")

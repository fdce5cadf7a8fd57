class PSRError(Exception):
    """Base class for every domain error raised by psr services."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidComplexError(PSRError):
    pass


class EnumerationCapError(PSRError):
    def __init__(self, n_vertices: int, cap: int):
        super().__init__(
            f"Subset enumeration over {n_vertices} vertices needs 2^{n_vertices} = "
            f"{2 ** n_vertices} induced subcomplexes; the cap is {cap} vertices"
        )
        self.n_vertices = n_vertices
        self.cap = cap


class MonotonicityError(PSRError):
    def __init__(self, face, coface, face_value: float, coface_value: float):
        super().__init__(
            f"Filtration is not monotone: f({list(face)}) = {face_value} > "
            f"f({list(coface)}) = {coface_value}"
        )
        self.face = tuple(face)
        self.coface = tuple(coface)


class MissingFaceValueError(PSRError):
    def __init__(self, face):
        super().__init__(f"Face {list(face)} has no filtration value")
        self.face = tuple(face)


class InvalidParameterError(PSRError):
    pass


class EmptyCloudError(PSRError):
    pass


class ParseError(PSRError):
    def __init__(self, path, detail: str, line: int | None = None):
        where = f"{path}:{line}" if line is not None else f"{path}"
        super().__init__(f"{where}: {detail}")
        self.path = str(path)
        self.line = line


class EvaluationError(PSRError):
    pass

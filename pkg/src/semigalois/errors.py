"""Exception hierarchy shared by every module."""


class SemiGaloisError(Exception):
    pass


class AssociativityViolation(SemiGaloisError):
    def __init__(self, x, y, z):
        super().__init__(f"(xy)z != x(yz) for x={x}, y={y}, z={z}")
        self.triple = (x, y, z)


class IdentityViolation(SemiGaloisError):
    def __init__(self, x):
        super().__init__(f"identity is not neutral for element {x}")
        self.element = x


class SizeCapExceeded(SemiGaloisError):
    def __init__(self, cap, what="search"):
        super().__init__(f"{what} exceeded the configured cap of {cap}")
        self.cap = cap


class SideMismatch(SemiGaloisError):
    pass


class ActionLawViolation(SemiGaloisError):
    def __init__(self, s, m, n):
        super().__init__(f"action law fails at state {s}, elements {m}, {n}")
        self.witness = (s, m, n)


class ArityMismatch(SemiGaloisError):
    pass


class SignatureMismatch(SemiGaloisError):
    pass


class NotEndomorphism(SemiGaloisError):
    def __init__(self, h):
        super().__init__(f"not an endomorphism: {h!r}")
        self.map = h


class NotMono(SemiGaloisError):
    def __init__(self, i):
        super().__init__(f"covering component {i} is not injective")
        self.index = i


class EmptyAction(SemiGaloisError):
    pass


class NotSurjective(SemiGaloisError):
    pass


class ReconstructionFailure(SemiGaloisError):
    """Raised when lambda_M fails to be an isomorphism; always a code defect."""


class IllDefined(SemiGaloisError):
    def __init__(self, m, s):
        super().__init__(f"element {m} acts ambiguously on state {s}")
        self.element = m
        self.state = s


class ParseError(SemiGaloisError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        elif column is not None:
            where = f"position {column}: "
        super().__init__(where + message)
        self.line = line
        self.column = column


class UnknownLetter(SemiGaloisError):
    pass


class AlphabetMismatch(SemiGaloisError):
    pass

"""Exception hierarchy. Every failure that is a property of the input carries a witness."""


class TpactError(Exception):
    """Base class for all errors raised by tpact."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def __str__(self):
        msg = super().__str__()
        if self.witness is not None:
            return f"{msg} witness={format_witness(self.witness)}"
        return msg


def format_witness(w):
    if isinstance(w, tuple):
        return "(" + ",".join(format_witness(x) for x in w) + ")"
    return str(w)


class MalformedInput(TpactError):
    pass


class NotAssociative(TpactError):
    pass


class NotRegular(TpactError):
    pass


class NotInverse(TpactError):
    pass


class NotClifford(TpactError):
    pass


class NotAGroup(TpactError):
    pass


class NotHomomorphism(TpactError):
    pass


class InvalidKNS(TpactError):
    def __init__(self, law, witness=None):
        super().__init__(f"kernel normal system violates {law}", witness)
        self.law = law


class InvalidExtension(TpactError):
    pass


class InvalidTransversal(TpactError):
    pass


class InternalInvariantViolation(TpactError):
    pass


class SizeCapExceeded(TpactError):
    pass


class AxiomViolation(TpactError):
    def __init__(self, axiom, witness=None, detail=""):
        msg = f"axiom {axiom} fails"
        if detail:
            msg += f": {detail}"
        super().__init__(msg, witness)
        self.axiom = axiom


class FactorizationFailure(TpactError):
    pass


class DiagramFailure(TpactError):
    def __init__(self, square, witness=None):
        super().__init__(f"diagram square {square} does not commute", witness)
        self.square = square


class NotEUnitary(TpactError):
    pass


class NotSieben(TpactError):
    pass


class NotAdmissible(TpactError):
    pass

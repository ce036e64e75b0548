"""Exception types carrying a named violated condition and a witness."""


class Diagnostic(Exception):
    """A checked condition failed; ``axiom`` names it, ``witness`` pins it down."""

    def __init__(self, axiom, message, witness=None):
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom
        self.message = message
        self.witness = witness

    def to_json(self):
        return {"axiom": self.axiom, "message": self.message, "witness": self.witness}


class ConfigurationError(Diagnostic):
    pass


class WeightError(Diagnostic):
    pass


class CocycleError(Diagnostic):
    pass


class MonomialError(Diagnostic):
    pass


class BoundExceeded(Diagnostic):
    def __init__(self, what, value, bound):
        super().__init__("bound", f"{what}={value} exceeds configured limit {bound}",
                         {"value": value, "bound": bound})

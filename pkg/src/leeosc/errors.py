"""Exception types raised across the package."""


class LeeOscError(ValueError):
    """Base class for domain errors."""


class AnsatzInadmissible(LeeOscError):
    def __init__(self, detail=""):
        super().__init__("ansatz inadmissible" + (f": {detail}" if detail else ""))


class DegenerateShift(LeeOscError):
    def __init__(self, detail=""):
        super().__init__("degenerate shift" + (f": {detail}" if detail else ""))


class DecouplingFailed(LeeOscError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"decoupling failed: largest cross term {residual:.3e}")


class NotDirectlyCanonical(LeeOscError):
    def __init__(self, detail=""):
        super().__init__("not directly canonical" + (f": {detail}" if detail else ""))


class NotStandardMode(LeeOscError):
    def __init__(self, detail=""):
        super().__init__("not a standard mode" + (f": {detail}" if detail else ""))


class NotTempered(LeeOscError):
    def __init__(self, sigma):
        super().__init__(f"not tempered: Gaussian exponent {sigma} has positive real part")


class NoDifferentialPart(LeeOscError):
    def __init__(self):
        super().__init__("no differential part")


class DegenerateKineticTerm(LeeOscError):
    def __init__(self):
        super().__init__("degenerate kinetic term")


class DegenerateMassMatrix(LeeOscError):
    def __init__(self):
        super().__init__("degenerate mass matrix")


class BlowUpError(ArithmeticError):
    """A trajectory left the finite range (|entry| > 1e12)."""

    def __init__(self, t):
        self.t = t
        super().__init__(f"blow-up at t={t:.17g}")

"""Exception hierarchy.  Every error carries a stable ``code`` string."""


class KnDegreeError(Exception):
    code = "MATH_ERROR"


class ContextMismatch(KnDegreeError):
    code = "CONTEXT_MISMATCH"


class SpaceError(KnDegreeError):
    code = "BAD_SPACE"


class PresentationError(KnDegreeError):
    code = "BAD_PRESENTATION"


class AxiomError(KnDegreeError):
    """An algebra, module or Hopf axiom failed.

    ``axiom`` names the identity and ``where`` names the basis element(s)
    on which it failed.
    """

    code = "AXIOM_FAILURE"

    def __init__(self, axiom, where=None):
        self.axiom = axiom
        self.where = where
        msg = axiom if where is None else f"{axiom} fails at {where}"
        super().__init__(msg)


class NotAGroup(KnDegreeError):
    code = "NOT_A_GROUP"


class MissingAugmentation(KnDegreeError):
    code = "MISSING_AUGMENTATION"


class AnnihilatorRankError(KnDegreeError):
    code = "ANNIHILATOR_RANK"

    def __init__(self, rank):
        self.rank = rank
        super().__init__(f"annihilator of the augmentation ideal has rank {rank}, expected 1")


class NotFrobenius(KnDegreeError):
    code = "NOT_FROBENIUS"


class ClosedFormMismatch(KnDegreeError):
    code = "CLOSED_FORM_MISMATCH"


class BudgetExceeded(KnDegreeError):
    code = "BUDGET_EXCEEDED"

"""Exception hierarchy shared by all arqlab modules."""


class ArqlabError(Exception):
    """Base class for every error raised by arqlab."""


class CharacteristicTooSmall(ArqlabError):
    pass


class NotFiniteDimensional(ArqlabError):
    pass


class MalformedRelation(ArqlabError):
    pass


class NotTwoSided(ArqlabError):
    pass


class DecompositionStalled(ArqlabError):
    pass


class IsoSearchInconclusive(ArqlabError):
    pass


class UndefinedTranslate(ArqlabError):
    pass


class SocleNotUnique(ArqlabError):
    pass


class BudgetExceeded(ArqlabError):
    pass


class NotSelfinjective(ArqlabError):
    pass


class NotSimplyLaced(ArqlabError):
    pass


class NotDynkin(ArqlabError):
    pass


class InvalidTwist(ArqlabError):
    pass


class NotASink(ArqlabError):
    pass


class NotTriangular(ArqlabError):
    pass


class NoSliceFound(ArqlabError):
    pass


class PreconditionFailed(ArqlabError):
    pass


class CheckFailed(ArqlabError):
    def __init__(self, clause, detail=""):
        super().__init__(f"{clause}: {detail}" if detail else clause)
        self.clause = clause
        self.detail = detail


class InternalInconsistency(ArqlabError):
    """A mathematically guaranteed implication failed; always a bug."""


class ParseError(ArqlabError):
    pass

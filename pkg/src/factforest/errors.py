"""Exception hierarchy shared by all factforest modules."""


class FactForestError(Exception):
    """Base class for all library errors."""


class NotAssociative(FactForestError):
    """A Cayley table failed the associativity check.

    ``witness`` is a triple (a, b, c) with (ab)c != a(bc).
    """

    def __init__(self, witness):
        self.witness = tuple(witness)
        a, b, c = self.witness
        super().__init__(f"({a}*{b})*{c} != {a}*({b}*{c})")


class IndexOutOfRange(FactForestError):
    pass


class UnknownLetter(FactForestError):
    pass


class EmptyWord(FactForestError):
    pass


class WordTooShort(FactForestError):
    pass


class NotRegular(FactForestError):
    pass


class NotInGroupHClass(FactForestError):
    pass


class NotRegularDClass(FactForestError):
    pass


class NotDClosed(FactForestError):
    pass


class NotSingleLClass(FactForestError):
    pass


class NotLClosed(FactForestError):
    pass


class InvalidElement(FactForestError):
    pass


class SplitNotRamseyan(FactForestError):
    pass


class TreeNotRamseyan(FactForestError):
    pass


class ElementOutOfRange(FactForestError):
    pass


class InvalidPositions(FactForestError):
    pass


class TooLarge(FactForestError):
    pass

"""Exception hierarchy shared by all fibrcheck modules."""


class FibrcheckError(Exception):
    """Base class; ``module`` names the subsystem that raised it."""

    module = "fibrcheck"


# words
class WordsError(FibrcheckError, ValueError):
    module = "words"


class UnknownGenerator(WordsError):
    def __init__(self, name):
        super().__init__(f"unknown generator {name!r}")
        self.name = name


class MalformedToken(WordsError):
    def __init__(self, position, token=None):
        super().__init__(f"malformed token {token!r} at position {position}")
        self.position = position
        self.token = token


class ZeroExponent(WordsError):
    pass


class SchemaError(WordsError):
    pass


class LongitudeNotNullhomologous(WordsError):
    pass


class GenusOutOfRange(WordsError):
    pass


class MissingLongitude(WordsError):
    pass


class RelatorNotBalanced(WordsError):
    def __init__(self, index, weight):
        super().__init__(f"relator {index} has abelianized weight {weight}")
        self.index = index
        self.weight = weight


# groups
class GroupsError(FibrcheckError, ValueError):
    module = "groups"


class RepeatedSymbol(GroupsError):
    pass


class SymbolOutOfRange(GroupsError):
    pass


class MalformedCycle(GroupsError):
    pass


class DegreeMismatch(GroupsError):
    pass


class NotSurjective(GroupsError):
    pass


class LimitExceeded(GroupsError):
    """Search stopped early; ``partial`` holds the homomorphisms found so far."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


# twisted
class TwistedError(FibrcheckError, ValueError):
    module = "twisted"


class ChainConditionViolated(TwistedError):
    pass


class UnsupportedRepresentation(TwistedError):
    pass


class NotDeficiencyOne(TwistedError):
    pass


# obstruct
class CoprimalityViolated(FibrcheckError, ValueError):
    module = "obstruct"


# cli
class CorruptCache(FibrcheckError):
    module = "cli"

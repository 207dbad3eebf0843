"""Exceptions raised by the library."""


class PillowcaseError(Exception):
    pass


class NotInP3(PillowcaseError):
    pass


class NotInP4(PillowcaseError):
    pass


class NormalizationFailure(PillowcaseError):
    pass


class OnDiagonal(PillowcaseError):
    pass


class RelationViolation(PillowcaseError):

    def __init__(self, relation, residual, rho=None):
        self.relation = relation
        self.residual = residual
        self.rho = rho
        super().__init__("relation %s violated (residual %.3e)" % (
            relation, residual))


class ParseError(PillowcaseError):

    def __init__(self, message, position):
        self.position = position
        super().__init__("%s at position %d" % (message, position))


class InvalidBasepoint(PillowcaseError):
    pass


class PerturbationTooLarge(PillowcaseError):
    pass


class NoConvergence(PillowcaseError):
    pass


class ConfigError(PillowcaseError):
    pass

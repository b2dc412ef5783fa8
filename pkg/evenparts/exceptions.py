class EvenPartsError(Exception):
    """ Base class for errors raised by evenparts """


class NormalizationError(EvenPartsError, ValueError):
    """ A denominator does not have constant term 1, or a factor list does not
    multiply out to its denominator
    """


class ParameterError(EvenPartsError, ValueError):
    """ A statistic was requested outside of its domain """


class OracleCapError(ParameterError):
    """ Brute force enumeration requested above the configured cap """


class NonSimpleRootError(EvenPartsError, ValueError):
    """ The simple pole formula was applied to a root set with a repeated
    root
    """


class ConvergenceError(EvenPartsError, RuntimeError):
    """ The root finder hit its iteration cap """


class DecompositionError(EvenPartsError, RuntimeError):
    """ A pole decomposition does not reproduce its rational function """

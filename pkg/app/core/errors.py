class FreeCalcError(Exception):
    """Base de todos los errores de la librería."""


class ConfigError(FreeCalcError):
    pass


class PartitionFormatError(FreeCalcError, ValueError):
    pass


class LatticeMismatch(FreeCalcError, ValueError):
    pass


class CrossingPartitionError(FreeCalcError, ValueError):
    pass


class NotInInterval(FreeCalcError, ValueError):
    pass


class SeriesNotInvertible(FreeCalcError, ValueError):
    pass


class UsageError(FreeCalcError, ValueError):
    """Argumentos de línea de comandos inválidos."""


class ClosedFormNotAvailable(FreeCalcError):
    pass


class CapExceeded(FreeCalcError):
    def __init__(self, family: str, n: int, cap: int):
        self.family = family
        self.n = n
        self.cap = cap
        super().__init__(
            f"n={n} supera el límite '{family}' ({cap}). "
            f"Use NC_FREECALC_CAP_OVERRIDE para subirlo bajo su propio riesgo."
        )


class VerificationFailed(FreeCalcError):
    def __init__(self, suite: str, failures: list):
        self.suite = suite
        self.failures = failures
        super().__init__(f"La suite '{suite}' falló en {len(failures)} casos.")


EXIT_OK = 0
EXIT_ARGUMENT = 1
EXIT_CAP = 2
EXIT_VERIFICATION = 3


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, CapExceeded):
        return EXIT_CAP
    if isinstance(exc, VerificationFailed):
        return EXIT_VERIFICATION
    return EXIT_ARGUMENT

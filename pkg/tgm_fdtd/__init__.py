__version__ = '0.1.0'


class TgmFdtdException(Exception):
    pass


class DegeneratePoleException(TgmFdtdException):
    pass


class InvalidMediumException(TgmFdtdException):
    pass


class ResonanceException(TgmFdtdException):
    pass


class DomainException(TgmFdtdException):
    pass


class ImaginaryResidualException(TgmFdtdException):
    pass


class InvalidConfigException(TgmFdtdException):
    pass


class ConfigParseException(TgmFdtdException):
    pass


class SeriesMismatchException(TgmFdtdException):
    pass


class EmptyBandException(TgmFdtdException):
    pass


class UnknownUpdaterException(TgmFdtdException):
    pass


class UnknownCommandException(TgmFdtdException):
    pass

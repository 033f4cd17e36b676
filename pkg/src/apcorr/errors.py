"""Exception types shared across the package."""


class ApcorrError(Exception):
    """Base class for package errors."""


class ParameterError(ApcorrError, ValueError):
    """A parameter violates a documented precondition."""


class DomainError(ApcorrError, ValueError):
    """A value is outside the mathematical domain of an operation."""


class ConfigError(ApcorrError, ValueError):
    """A config file failed to parse or validate; message names the key."""


class CacheError(ApcorrError):
    """Base class for cache file problems."""


class CacheFormatError(CacheError):
    """Bad magic, truncated header, or malformed payload."""


class CacheVersionError(CacheError):
    """Cache file written by an incompatible format version."""


class CacheChecksumError(CacheError):
    """Stored checksum does not match the file contents."""

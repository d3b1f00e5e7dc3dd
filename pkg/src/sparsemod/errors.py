"""Exception taxonomy shared by every module.

Three failure classes matter to callers and map onto the CLI exit codes:
invalid parameters (1), desk-scale guards (2), and violated mathematical
invariants (3).  An invariant failure is a finding, not a usage error;
it means a statement this package is supposed to certify did not hold.
"""


class ConfigError(ValueError):
    """A parameter is outside the supported domain."""


class ConstructionError(ConfigError):
    """A constructive routine's precondition fails for these parameters.

    Callers may probe failures deliberately (e.g. undersized generating
    sets), so this is a ConfigError, not an invariant violation.
    """


class GuardError(RuntimeError):
    """A desk-scale resource guard would be exceeded."""


class InvariantError(RuntimeError):
    """A verified mathematical invariant failed to hold.

    This should never fire; if it does, either the implementation is wrong
    or a theorem-backed expectation was falsified, and the offending inputs
    are worth keeping.
    """

"""Exception types shared across the package."""


class GuardViolation(ValueError):
    """A numerical validity guard was violated (weak coupling, integrator
    stability, dispersive regime). Distinct from plain bad input so the CLI
    can report it with its own exit code."""


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration (parse errors, unknown or
    duplicate keys, type errors)."""

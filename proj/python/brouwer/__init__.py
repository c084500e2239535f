"""Choice-sequence constructions, stage semantics and proof-script checking."""

from ._core import (
    ResourceLimit,
    ResourceRefusal,
    bundled_script,
    bundled_scripts,
    check_script,
    checking_sequence,
    compare,
    critical_number,
    forces,
    lambda_interval,
    normalize_formula,
    pi_digits,
    prefix,
    run_cli,
    sweep,
)

__all__ = [
    "ResourceLimit",
    "ResourceRefusal",
    "bundled_script",
    "bundled_scripts",
    "check_script",
    "checking_sequence",
    "compare",
    "critical_number",
    "forces",
    "lambda_interval",
    "normalize_formula",
    "pi_digits",
    "prefix",
    "run_cli",
    "sweep",
]

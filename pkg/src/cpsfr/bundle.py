"""Bundled example files: the LKAS lane-keeping model and its scenarios.

Two domain files ship with the package: ``lkas.cpsf`` (base model) and
``lkas_patch.cpsf`` (adds a Patch action that restores 25 fps
recording). Three scenarios exercise them: ``design1`` (a fully
specified design), ``partial1`` (camera memory encryption left open),
and ``attacked`` (25 fps operation interrupted by a cyberattack at
step 0). The files are byte-stable; golden tests compare against them.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

DOMAIN_NAMES = ("lkas", "lkas_patch")
SCENARIO_NAMES = ("design1", "partial1", "attacked")

_DOMAIN_SUFFIX = ".cpsf"
_SCENARIO_SUFFIX = ".cpss"


@dataclass(frozen=True)
class BundledExample:
    name: str
    domain_text: str
    scenarios: tuple[tuple[str, str], ...]

    def scenario_text(self, name: str) -> str:
        for scen_name, text in self.scenarios:
            if scen_name == name:
                return text
        raise KeyError(name)


def _read(filename: str) -> str:
    return (
        resources.files("cpsfr.examples").joinpath(filename).read_text("utf-8")
    )


def bundled_domain(name: str) -> str:
    """The text of a bundled domain file, by bare name or filename."""
    base = name.removesuffix(_DOMAIN_SUFFIX)
    if base not in DOMAIN_NAMES:
        raise KeyError(f"no bundled domain named {name!r}")
    return _read(base + _DOMAIN_SUFFIX)


def bundled_scenario(name: str) -> str:
    """The text of a bundled scenario file, by bare name or filename."""
    base = name.removesuffix(_SCENARIO_SUFFIX)
    if base not in SCENARIO_NAMES:
        raise KeyError(f"no bundled scenario named {name!r}")
    return _read(base + _SCENARIO_SUFFIX)


def bundled_examples() -> list[BundledExample]:
    """Every bundled domain, each paired with all bundled scenario texts."""
    scenarios = tuple((n, bundled_scenario(n)) for n in SCENARIO_NAMES)
    return [
        BundledExample(name, bundled_domain(name), scenarios)
        for name in DOMAIN_NAMES
    ]


__all__ = [
    "BundledExample",
    "DOMAIN_NAMES",
    "SCENARIO_NAMES",
    "bundled_domain",
    "bundled_scenario",
    "bundled_examples",
]

"""Parameter records for resources, inputs and squeezing.

All records are frozen dataclasses so they can be hashed and used as cache
keys. Angles are in radians.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SqueezeParam:
    """Complex squeezing ``zeta = r * exp(i*phi)``; phi is reduced mod 2*pi."""

    r: float
    phi: float = 0.0

    def __post_init__(self):
        r = float(self.r)
        phi = float(self.phi)
        if not math.isfinite(r) or r < 0:
            raise ValueError(f"squeezing modulus must be finite and >= 0, got {self.r!r}")
        if not math.isfinite(phi):
            raise ValueError(f"squeezing phase must be finite, got {self.phi!r}")
        phi = math.fmod(phi, TWO_PI)
        if phi < 0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_complex(cls, zeta: complex) -> "SqueezeParam":
        return cls(abs(zeta), cmath.phase(zeta))

    @property
    def zeta(self) -> complex:
        return cmath.rect(self.r, self.phi)

    @property
    def tanh(self) -> float:
        return math.tanh(self.r)


class ResourceFamily(str, Enum):
    TWIN_BEAM = "twin_beam"
    SQUEEZED_NUMBER = "squeezed_number"
    PHOTON_ADDED = "photon_added"
    PHOTON_SUBTRACTED = "photon_subtracted"
    SQUEEZED_BELL = "squeezed_bell"


class InputFamily(str, Enum):
    COHERENT = "coherent"
    SQUEEZED_VACUUM = "squeezed_vacuum"
    FOCK1 = "fock1"
    PHOTON_ADDED_COHERENT = "photon_added_coherent"
    SQUEEZED_FOCK1 = "squeezed_fock1"


# short names used on the command line and in tables
RESOURCE_ALIASES = {
    "tb": ResourceFamily.TWIN_BEAM,
    "sn": ResourceFamily.SQUEEZED_NUMBER,
    "pas": ResourceFamily.PHOTON_ADDED,
    "pss": ResourceFamily.PHOTON_SUBTRACTED,
    "sb": ResourceFamily.SQUEEZED_BELL,
}
INPUT_ALIASES = {
    "coh": InputFamily.COHERENT,
    "sq": InputFamily.SQUEEZED_VACUUM,
    "fock": InputFamily.FOCK1,
    "pac": InputFamily.PHOTON_ADDED_COHERENT,
    "sqfock": InputFamily.SQUEEZED_FOCK1,
}


def resource_family(name) -> ResourceFamily:
    if isinstance(name, ResourceFamily):
        return name
    key = str(name).strip().lower()
    if key in RESOURCE_ALIASES:
        return RESOURCE_ALIASES[key]
    return ResourceFamily(key)


def input_family(name) -> InputFamily:
    if isinstance(name, InputFamily):
        return name
    key = str(name).strip().lower()
    if key in INPUT_ALIASES:
        return INPUT_ALIASES[key]
    return InputFamily(key)


@dataclass(frozen=True)
class ResourceSpec:
    """A two-mode resource: a family plus its squeezing (and SB angles).

    Every family is ``S12(zeta) (c00 |0,0> + c11 |1,1>)`` for some pair of
    coefficients; see :meth:`pair_coefficients`.
    """

    family: ResourceFamily
    zeta: SqueezeParam
    delta: float | None = None
    theta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", resource_family(self.family))
        if not isinstance(self.zeta, SqueezeParam):
            raise TypeError("zeta must be a SqueezeParam")
        is_sb = self.family is ResourceFamily.SQUEEZED_BELL
        if is_sb:
            if self.delta is None or self.theta is None:
                raise ValueError("squeezed Bell resources need both delta and theta")
            if not (math.isfinite(self.delta) and math.isfinite(self.theta)):
                raise ValueError("delta and theta must be finite")
            object.__setattr__(self, "delta", float(self.delta))
            object.__setattr__(self, "theta", float(self.theta))
        elif self.delta is not None or self.theta is not None:
            raise ValueError(f"{self.family.value} takes no delta/theta")

    @classmethod
    def twin_beam(cls, r, phi=math.pi):
        return cls(ResourceFamily.TWIN_BEAM, SqueezeParam(r, phi))

    @classmethod
    def squeezed_number(cls, r, phi=math.pi):
        return cls(ResourceFamily.SQUEEZED_NUMBER, SqueezeParam(r, phi))

    @classmethod
    def photon_added(cls, r, phi=math.pi):
        return cls(ResourceFamily.PHOTON_ADDED, SqueezeParam(r, phi))

    @classmethod
    def photon_subtracted(cls, r, phi=math.pi):
        return cls(ResourceFamily.PHOTON_SUBTRACTED, SqueezeParam(r, phi))

    @classmethod
    def squeezed_bell(cls, r, delta, theta=0.0, phi=math.pi):
        return cls(ResourceFamily.SQUEEZED_BELL, SqueezeParam(r, phi), delta, theta)

    @classmethod
    def make(cls, family, r, phi=math.pi, delta=None, theta=None):
        family = resource_family(family)
        if family is ResourceFamily.SQUEEZED_BELL:
            return cls(family, SqueezeParam(r, phi), delta if delta is not None else math.pi / 4,
                       theta if theta is not None else 0.0)
        return cls(family, SqueezeParam(r, phi))

    def with_squeeze(self, r, phi=None) -> "ResourceSpec":
        return replace(self, zeta=SqueezeParam(r, self.zeta.phi if phi is None else phi))

    @property
    def r(self) -> float:
        return self.zeta.r

    @property
    def phi(self) -> float:
        return self.zeta.phi

    def pair_coefficients(self) -> tuple[complex, complex]:
        """Normalized ``(c00, c11)`` of the unsqueezed |0,0>/|1,1> superposition.

        Global phases of the photon-added/subtracted states are dropped.
        """
        f = self.family
        t = math.tanh(self.zeta.r)
        eiphi = cmath.exp(1j * self.zeta.phi)
        if f is ResourceFamily.TWIN_BEAM:
            return 1.0 + 0j, 0j
        if f is ResourceFamily.SQUEEZED_NUMBER:
            return 0j, 1.0 + 0j
        if f is ResourceFamily.PHOTON_ADDED:
            n = 1.0 / math.sqrt(1.0 + t * t)
            return complex(-t * n), eiphi * n
        if f is ResourceFamily.PHOTON_SUBTRACTED:
            n = 1.0 / math.sqrt(1.0 + t * t)
            return complex(-n), eiphi * t * n
        return (complex(math.cos(self.delta)),
                cmath.exp(1j * self.theta) * math.sin(self.delta))

    def label(self) -> str:
        parts = [f"{self.family.value}", f"r={self.zeta.r:.12g}", f"phi={self.zeta.phi:.12g}"]
        if self.family is ResourceFamily.SQUEEZED_BELL:
            parts += [f"delta={self.delta:.12g}", f"theta={self.theta:.12g}"]
        return ",".join(parts)


@dataclass(frozen=True)
class InputSpec:
    """A single-mode input state.

    ``beta`` is used by the coherent and photon-added coherent families,
    ``s``/``varphi`` by the squeezed vacuum and squeezed Fock families.
    Parameters a family does not use must be left unset.
    """

    family: InputFamily
    beta: complex | None = None
    s: float | None = None
    varphi: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", input_family(self.family))
        f = self.family
        uses_beta = f in (InputFamily.COHERENT, InputFamily.PHOTON_ADDED_COHERENT)
        uses_sq = f in (InputFamily.SQUEEZED_VACUUM, InputFamily.SQUEEZED_FOCK1)
        if uses_beta:
            object.__setattr__(self, "beta", complex(0.0 if self.beta is None else self.beta))
        elif self.beta is not None:
            raise ValueError(f"{f.value} takes no beta")
        if uses_sq:
            s = 0.0 if self.s is None else float(self.s)
            if not math.isfinite(s) or s < 0:
                raise ValueError("input squeezing s must be finite and >= 0")
            object.__setattr__(self, "s", s)
            object.__setattr__(self, "varphi", float(0.0 if self.varphi is None else self.varphi))
        elif self.s is not None or self.varphi is not None:
            raise ValueError(f"{f.value} takes no s/varphi")

    @classmethod
    def coherent(cls, beta=0.0):
        return cls(InputFamily.COHERENT, beta=beta)

    @classmethod
    def squeezed_vacuum(cls, s, varphi=0.0):
        return cls(InputFamily.SQUEEZED_VACUUM, s=s, varphi=varphi)

    @classmethod
    def fock1(cls):
        return cls(InputFamily.FOCK1)

    @classmethod
    def photon_added_coherent(cls, beta):
        return cls(InputFamily.PHOTON_ADDED_COHERENT, beta=beta)

    @classmethod
    def squeezed_fock1(cls, s, varphi=0.0):
        return cls(InputFamily.SQUEEZED_FOCK1, s=s, varphi=varphi)

    @classmethod
    def make(cls, family, beta=None, s=None, varphi=None):
        """Build an input, silently dropping parameters the family ignores."""
        family = input_family(family)
        if family in (InputFamily.COHERENT, InputFamily.PHOTON_ADDED_COHERENT):
            return cls(family, beta=beta)
        if family in (InputFamily.SQUEEZED_VACUUM, InputFamily.SQUEEZED_FOCK1):
            return cls(family, s=s, varphi=varphi)
        return cls(family)

    def label(self) -> str:
        f = self.family
        if self.beta is not None:
            return f"{f.value},beta={self.beta.real:.12g}{self.beta.imag:+.12g}j"
        if self.s is not None:
            return f"{f.value},s={self.s:.12g},varphi={self.varphi:.12g}"
        return f.value


# input parameters used by the standard figure set
DEFAULT_BETA = 0.3
DEFAULT_S = 0.8


def standard_inputs(beta=DEFAULT_BETA, s=DEFAULT_S, varphi=0.0) -> list[InputSpec]:
    """The five input states, in the order used by every table."""
    return [
        InputSpec.coherent(beta),
        InputSpec.squeezed_vacuum(s, varphi),
        InputSpec.fock1(),
        InputSpec.photon_added_coherent(beta),
        InputSpec.squeezed_fock1(s, varphi),
    ]


def standard_resources(r=0.0, phi=math.pi, delta=math.pi / 4, theta=0.0) -> list[ResourceSpec]:
    """Twin-beam, squeezed number, photon-added, photon-subtracted, squeezed Bell."""
    return [
        ResourceSpec.twin_beam(r, phi),
        ResourceSpec.squeezed_number(r, phi),
        ResourceSpec.photon_added(r, phi),
        ResourceSpec.photon_subtracted(r, phi),
        ResourceSpec.squeezed_bell(r, delta, theta, phi),
    ]

# Chain and State Types
# =====================
# The value types every other package passes around: the chain geometry,
# local basis labels and the dense statevector itself.

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from config import config as settings
from .errors import DomainError, ResourceLimitError


@dataclass(frozen=True)
class ChainConfig:
    """
    A chain of N qudits with local dimension d.

    Sites are numbered 1..N. Basis indices are big-endian in base d:
    site 1 is the most significant digit, so reshaping an amplitude
    vector to shape (d,) * N puts site i on axis i - 1.
    """
    N: int
    d: int
    seed: int = 0

    def __post_init__(self):
        if self.N <= 0 or self.N % 2:
            raise DomainError(f"N must be a positive even integer, got {self.N}")
        if self.d < 2:
            raise DomainError(f"local dimension d must be >= 2, got {self.d}")
        cap = settings.resources.max_amplitude_exponent
        if self.N * math.log2(self.d) > cap:
            raise ResourceLimitError(
                f"d^N = {self.d}^{self.N} amplitudes exceeds the cap of 2^{cap}"
            )

    @property
    def dim(self) -> int:
        return self.d ** self.N

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.d,) * self.N

    def check_site(self, site: int) -> int:
        if not 1 <= site <= self.N:
            raise DomainError(f"site must be in [1, {self.N}], got {site}")
        return site

    def check_bond(self, bond: int) -> int:
        if not 1 <= bond <= self.N - 1:
            raise DomainError(f"bond must be in [1, {self.N - 1}], got {bond}")
        return bond

    def same_space(self, other: "ChainConfig") -> bool:
        # the seed does not change the Hilbert space
        return self.N == other.N and self.d == other.d


@dataclass(frozen=True)
class LocalBasisLabel:
    """A single-site basis state: Z(k) is the charge eigenstate |k>, X(k) the shift eigenstate |k)."""
    kind: str
    k: int

    def __post_init__(self):
        if self.kind not in ("Z", "X"):
            raise DomainError(f"basis kind must be 'Z' or 'X', got {self.kind!r}")
        if self.k < 0:
            raise DomainError(f"basis label must be non-negative, got {self.k}")

    @classmethod
    def z(cls, k: int) -> "LocalBasisLabel":
        return cls("Z", k)

    @classmethod
    def x(cls, k: int) -> "LocalBasisLabel":
        return cls("X", k)

    def __str__(self) -> str:
        return f"{self.kind}({self.k})"


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Dense amplitudes of a chain state.

    The amplitude array is stored read-only, so a StateVector can be shared
    between threads. Operations that change amplitudes return a new value.

    Projected or difference states are not normalized; they are created with
    normalized=False and skip the norm check.
    """
    amplitudes: np.ndarray
    config: ChainConfig
    normalized: bool = True
    norm: float = field(init=False)

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.size != self.config.dim:
            raise DomainError(
                f"expected {self.config.dim} amplitudes for N={self.config.N}, "
                f"d={self.config.d}, got {amplitudes.size}"
            )
        amplitudes.setflags(write=False)
        norm = float(np.linalg.norm(amplitudes))
        if self.normalized and abs(norm - 1.0) > settings.tolerances.assertion:
            raise DomainError(f"state is flagged normalized but has norm {norm!r}")

        # ============================================
        # PYTHON CONCEPT: object.__setattr__ on a frozen dataclass
        # ============================================
        # frozen=True blocks normal assignment, even inside __post_init__.
        # object.__setattr__ goes around that, once, while we build the value.
        object.__setattr__(self, "amplitudes", amplitudes)
        object.__setattr__(self, "norm", norm)

    def tensor(self) -> np.ndarray:
        """Amplitudes viewed with one axis per site (read-only)."""
        return self.amplitudes.reshape(self.config.shape)

    def with_amplitudes(self, amplitudes: np.ndarray, normalized: bool = None) -> "StateVector":
        """A new state on the same chain; keeps the normalized flag unless told otherwise."""
        flag = self.normalized if normalized is None else normalized
        return StateVector(amplitudes, self.config, normalized=flag)

    def normalize(self) -> "StateVector":
        if self.norm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / self.norm, self.config, normalized=True)

    def require_normalized(self, what: str = "this operation") -> "StateVector":
        if not self.normalized:
            raise DomainError(f"{what} needs a normalized state, got an unnormalized one")
        return self

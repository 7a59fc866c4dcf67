"""Squeezer settings, dB conversions and loss chains."""
from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class EfficiencyChain:
    """Ordered (label, efficiency) loss stages.

    Vacuum-environment losses compose multiplicatively, so stage order only
    matters for reporting.
    """

    stages: tuple = ()

    def __post_init__(self):
        stages = tuple((str(label), float(eta)) for label, eta in self.stages)
        for label, eta in stages:
            if not 0 <= eta <= 1:
                raise ValueError(f"stage {label!r}: efficiency {eta} not in [0, 1]")
        object.__setattr__(self, "stages", stages)

    def __len__(self):
        return len(self.stages)

    @property
    def total(self):
        return chain_efficiency(self)

    def prefixes(self):
        """Chains made of the first 0, 1, ..., n stages."""
        return [EfficiencyChain(self.stages[:i]) for i in range(len(self) + 1)]


@dataclass(frozen=True)
class SqueezerConfig:
    """Generated squeezing (positive dB), injection angle (rad) and losses."""

    generated_db: float
    angle: float = 0.0
    chain: EfficiencyChain = field(default_factory=EfficiencyChain)

    def __post_init__(self):
        if not self.generated_db >= 0:
            raise ValueError(f"generated_db must be >= 0, got {self.generated_db}")

    @property
    def r(self):
        return db_to_r(self.generated_db)

    @property
    def efficiency(self):
        return chain_efficiency(self.chain)


def db_to_r(db):
    """Squeeze factor with e^{2r} = 10^{db/10}."""
    return db * math.log(10) / 20


def r_to_db(r):
    return 20 * r / math.log(10)


def chain_efficiency(chain):
    total = 1.0
    for _, eta in chain.stages:
        total *= eta
    return total


def _efficiency(chain_or_eta):
    if isinstance(chain_or_eta, EfficiencyChain):
        return chain_efficiency(chain_or_eta)
    eta = float(chain_or_eta)
    if not 0 <= eta <= 1:
        raise ValueError(f"efficiency {eta} not in [0, 1]")
    return eta


def effective_variances(db, chain):
    """(squeezed, anti-squeezed) variance ratios to vacuum after the losses."""
    if db < 0:
        raise ValueError(f"db must be >= 0, got {db}")
    eta = _efficiency(chain)
    g = 10 ** (db / 10)
    return eta / g + (1 - eta), eta * g + (1 - eta)


def effective_db(db, chain):
    """Observed (squeezed_db, antisqueezed_db) after the chain; squeezed is <= 0.

    `chain` may be an EfficiencyChain or a bare total efficiency.
    """
    v_sqz, v_anti = effective_variances(db, chain)
    return 10 * math.log10(v_sqz), 10 * math.log10(v_anti)

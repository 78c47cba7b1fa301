"""
План размещения: решения DS_i (выключатель на кандидате i) и DT_j (пункт маневра j)
"""

from dataclasses import dataclass
from typing import FrozenSet, Sequence, Tuple

import numpy as np

from ..errors import ConfigError
from ..network import CandidateSite, Network

DECODE_THRESHOLD = 0.5


@dataclass(frozen=True)
class SwitchPlan:
    """Бинарные решения по кандидатам в порядке их объявления в файле фидера"""
    switch_sites: Tuple[CandidateSite, ...]
    maneuver_sites: Tuple[CandidateSite, ...]
    switch_decisions: Tuple[bool, ...]
    maneuver_decisions: Tuple[bool, ...]

    def __post_init__(self):
        if len(self.switch_decisions) != len(self.switch_sites):
            raise ConfigError(
                f"решений по выключателям {len(self.switch_decisions)}, кандидатов {len(self.switch_sites)}"
            )
        if len(self.maneuver_decisions) != len(self.maneuver_sites):
            raise ConfigError(
                f"решений по пунктам маневра {len(self.maneuver_decisions)}, кандидатов {len(self.maneuver_sites)}"
            )

    # ---------- конструкторы ----------

    @classmethod
    def from_decisions(cls, net: Network, switches: Sequence[bool], maneuvers: Sequence[bool]) -> "SwitchPlan":
        return cls(
            switch_sites=net.switch_sites,
            maneuver_sites=net.maneuver_sites,
            switch_decisions=tuple(bool(x) for x in switches),
            maneuver_decisions=tuple(bool(x) for x in maneuvers),
        )

    @classmethod
    def empty(cls, net: Network) -> "SwitchPlan":
        """Ни одного выключателя и пункта маневра"""
        return cls.from_decisions(net, [False] * len(net.switch_sites), [False] * len(net.maneuver_sites))

    @classmethod
    def full(cls, net: Network) -> "SwitchPlan":
        """Все кандидаты выбраны"""
        return cls.from_decisions(net, [True] * len(net.switch_sites), [True] * len(net.maneuver_sites))

    @classmethod
    def from_bits(cls, net: Network, switch_bits: str, maneuver_bits: str = "") -> "SwitchPlan":
        """План из строк 0/1 (порядок кандидатов как в файле)"""
        for bits in (switch_bits, maneuver_bits):
            if set(bits) - {"0", "1"}:
                raise ConfigError(f"строка плана должна состоять из 0 и 1: {bits!r}")
        return cls.from_decisions(net, [c == "1" for c in switch_bits], [c == "1" for c in maneuver_bits])

    @classmethod
    def from_index(cls, net: Network, index: int) -> "SwitchPlan":
        """План по номеру в полном переборе: младшие биты - выключатели"""
        n, m = len(net.switch_sites), len(net.maneuver_sites)
        bits = [(index >> k) & 1 == 1 for k in range(n + m)]
        return cls.from_decisions(net, bits[:n], bits[n:])

    @classmethod
    def with_installed(cls, net: Network, site_ids: Sequence[str]) -> "SwitchPlan":
        """План, в котором выбраны перечисленные кандидаты"""
        chosen = set(site_ids)
        unknown = chosen - set(net.candidates)
        if unknown:
            raise ConfigError(f"неизвестные кандидаты: {sorted(unknown)}")
        return cls.from_decisions(
            net,
            [s.id in chosen for s in net.switch_sites],
            [s.id in chosen for s in net.maneuver_sites],
        )

    # ---------- запросы ----------

    @property
    def installed_switch_sites(self) -> Tuple[CandidateSite, ...]:
        return tuple(s for s, on in zip(self.switch_sites, self.switch_decisions) if on)

    @property
    def built_maneuver_sites(self) -> Tuple[CandidateSite, ...]:
        return tuple(s for s, on in zip(self.maneuver_sites, self.maneuver_decisions) if on)

    @property
    def installed_branches(self) -> FrozenSet[str]:
        """Ветви с установленными телеуправляемыми выключателями"""
        return frozenset(s.on_branch for s in self.installed_switch_sites)

    @property
    def switch_bits(self) -> str:
        return "".join("1" if on else "0" for on in self.switch_decisions)

    @property
    def maneuver_bits(self) -> str:
        return "".join("1" if on else "0" for on in self.maneuver_decisions)

    @property
    def key(self) -> str:
        return f"{self.switch_bits}|{self.maneuver_bits}"

    @property
    def size(self) -> int:
        return len(self.switch_decisions) + len(self.maneuver_decisions)

    def encode(self) -> np.ndarray:
        """Генотип 0/1 длины n+m"""
        return np.array(self.switch_decisions + self.maneuver_decisions, dtype=float)

    def __str__(self) -> str:
        return f"DS={self.switch_bits or '-'} DT={self.maneuver_bits or '-'}"


def decode(genotype: Sequence[float], net: Network) -> SwitchPlan:
    """Генотип [0,1]^(n+m) -> план; ген >= 0.5 означает установку"""
    n, m = len(net.switch_sites), len(net.maneuver_sites)
    genes = np.asarray(genotype, dtype=float)
    if genes.shape != (n + m,):
        raise ConfigError(f"длина генотипа {genes.size}, ожидается {n + m}")
    decisions = genes >= DECODE_THRESHOLD
    return SwitchPlan.from_decisions(net, decisions[:n].tolist(), decisions[n:].tolist())

"""Generators for SEN and SEN+ dependability models.

Three analyses are supported for each network:

* terminal: one source-destination connection,
* broadcast: one source reaching every destination,
* network: every connection at once.

Each model comes out either as a DFT or as its dual DRBD, with switches
optionally backed by warm spares.  Gate arities are pinned for ``n = 8``
and ``n = 128``; other sizes follow the same shape, and where that shape
is a guess (SEN+ broadcast and network) the model metadata says
``"extrapolated": true``.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from typing import Optional

from senrel.dist import DormancyFactor, FailureDistribution
from senrel.model import (
    BasicEvent,
    Block,
    NAnd,
    NOr,
    Node,
    Parallel,
    RWsp,
    Series,
    Wsp,
)


class Variant(str, enum.Enum):
    SEN = "sen"
    SEN_PLUS = "sen+"


class Analysis(str, enum.Enum):
    TERMINAL = "terminal"
    BROADCAST = "broadcast"
    NETWORK = "network"


class Formalism(str, enum.Enum):
    DFT = "dft"
    DRBD = "drbd"


class Spares(str, enum.Enum):
    NONE = "none"
    PAPER_DEFAULT = "paper"
    ALL_INPUTS = "all"


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class SenModelSpec:
    n: int
    variant: Variant = Variant.SEN_PLUS
    analysis: Analysis = Analysis.TERMINAL
    formalism: Formalism = Formalism.DFT
    spares: Spares = Spares.PAPER_DEFAULT
    rate: float = 1e-5
    dormancy: float = 0.1

    def __post_init__(self):
        for name, cls in (("variant", Variant), ("analysis", Analysis), ("formalism", Formalism), ("spares", Spares)):
            try:
                object.__setattr__(self, name, cls(getattr(self, name)))
            except ValueError:
                raise SpecError(f"invalid {name}: {getattr(self, name)!r}") from None
        n = self.n
        if isinstance(n, bool) or not isinstance(n, int) or n < 1 or n & (n - 1):
            raise SpecError("n must be a power of two")
        if n < 4:
            raise SpecError("n must be at least 4")
        if self.spares is Spares.ALL_INPUTS and self.analysis is not Analysis.NETWORK:
            raise SpecError("spares 'all' is only defined for the network analysis")
        if self.variant is Variant.SEN_PLUS and self.analysis is Analysis.NETWORK and n < 8:
            raise SpecError("network SEN+ needs n >= 8 so both alternative paths are nonempty")
        try:
            FailureDistribution(self.rate)
            DormancyFactor(self.dormancy)
        except ValueError as exc:
            raise SpecError(str(exc)) from None

    @property
    def stages(self) -> int:
        return self.n.bit_length() - 1

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "variant": self.variant.value,
            "analysis": self.analysis.value,
            "formalism": self.formalism.value,
            "spares": self.spares.value,
            "rate": self.rate,
            "dormancy": self.dormancy,
        }


@dataclass(frozen=True)
class StructureCounts:
    """Gate arities and switch counts of a generated model.

    Fields that do not apply to an analysis are ``None``.
    """

    total_components: int
    spared_count: int
    top_or_inputs: int
    path_length: Optional[int] = None
    first_level_or_inputs: Optional[int] = None
    and_gate_count: Optional[int] = None
    network_or_inputs: Optional[int] = None
    output_series_length: Optional[int] = None

    def to_dict(self) -> dict:
        return asdict(self)


def sen_counts(spec: SenModelSpec) -> StructureCounts:
    n, k = spec.n, spec.stages
    spares = spec.spares
    if spec.variant is Variant.SEN:
        if spec.analysis is Analysis.TERMINAL:
            total = k
        elif spec.analysis is Analysis.BROADCAST:
            # sum_{i=1}^{log2 n} n / 2^i
            total = n - 1
        else:
            total = (n // 2) * k
        spared = {Spares.NONE: 0, Spares.PAPER_DEFAULT: 1, Spares.ALL_INPUTS: n // 2}[spares]
        return StructureCounts(
            total_components=total,
            spared_count=spared,
            top_or_inputs=total,
            path_length=k if spec.analysis is Analysis.TERMINAL else None,
        )

    if spec.analysis is Analysis.TERMINAL:
        per_path = k - 1
        return StructureCounts(
            total_components=2 * per_path + 2,
            spared_count=0 if spares is Spares.NONE else 2,
            top_or_inputs=3,
            path_length=k + 1,
            first_level_or_inputs=per_path,
        )
    if spec.analysis is Analysis.BROADCAST:
        per_path = n // 2 - 1
        outputs = n // 2
        return StructureCounts(
            total_components=1 + 2 * per_path + outputs,
            spared_count=0 if spares is Spares.NONE else 1,
            top_or_inputs=outputs + 2,
            first_level_or_inputs=per_path,
            output_series_length=outputs,
        )
    and_gates = n // 4
    per_path = (k - 2) * n // 4
    inputs = outputs = n // 2
    return StructureCounts(
        total_components=inputs + 2 * and_gates + 2 * per_path + outputs,
        spared_count={Spares.NONE: 0, Spares.PAPER_DEFAULT: 1, Spares.ALL_INPUTS: inputs}[spares],
        # spare, rest of the inputs, both paths, outputs, one per AND pair
        top_or_inputs=4 + and_gates,
        first_level_or_inputs=inputs - 1,
        and_gate_count=and_gates,
        network_or_inputs=per_path,
        output_series_length=outputs,
    )


def is_extrapolated(spec: SenModelSpec) -> bool:
    return spec.variant is Variant.SEN_PLUS and spec.analysis is not Analysis.TERMINAL and spec.n != 128


class _Kit:
    """Node constructors for one formalism, so each generator is written once
    in terms of failure logic (``any_`` fails if any input fails, ``all_``
    only if all do)."""

    def __init__(self, spec: SenModelSpec):
        self.dft = spec.formalism is Formalism.DFT
        self.switch = FailureDistribution(spec.rate)
        self.dormant = DormancyFactor(spec.dormancy).dormant(self.switch)

    def any_(self, children):
        return (NOr if self.dft else Series)(tuple(children))

    def all_(self, children):
        return (NAnd if self.dft else Parallel)(tuple(children))

    def plain(self, ident: int):
        return (BasicEvent if self.dft else Block)(ident, self.switch)

    def spared(self, ident: int):
        return (Wsp if self.dft else RWsp)(ident, self.switch, self.switch, self.dormant)

    def leaf(self, ident: int, spared: bool):
        return self.spared(ident) if spared else self.plain(ident)

    def group(self, ids):
        return self.any_(self.plain(i) for i in ids)


def _sen(spec: SenModelSpec, kit: _Kit) -> Node:
    # single path: the system fails as soon as any switch in it fails
    total = sen_counts(spec).total_components
    if spec.spares is Spares.ALL_INPUTS:
        spared = set(range(spec.n // 2))
    elif spec.spares is Spares.PAPER_DEFAULT:
        spared = {0}
    else:
        spared = set()
    return kit.any_(kit.leaf(i, i in spared) for i in range(total))


def _sen_plus_terminal(spec: SenModelSpec, kit: _Kit) -> Node:
    per_path = spec.stages - 1
    use_spares = spec.spares is not Spares.NONE
    upper = range(1, 1 + per_path)
    lower = range(1 + per_path, 1 + 2 * per_path)
    last = 1 + 2 * per_path
    return kit.any_(
        [
            kit.leaf(0, use_spares),
            kit.all_([kit.group(upper), kit.group(lower)]),
            kit.leaf(last, use_spares),
        ]
    )


def _sen_plus_broadcast(spec: SenModelSpec, kit: _Kit) -> Node:
    per_path = spec.n // 2 - 1
    upper = range(1, 1 + per_path)
    lower = range(1 + per_path, 1 + 2 * per_path)
    outputs = range(1 + 2 * per_path, 1 + 2 * per_path + spec.n // 2)
    # destination switches sit directly under the top gate (fan-in n/2 + 2)
    return kit.any_(
        [
            kit.leaf(0, spec.spares is not Spares.NONE),
            kit.all_([kit.group(upper), kit.group(lower)]),
            *(kit.plain(i) for i in outputs),
        ]
    )


def _sen_plus_network(spec: SenModelSpec, kit: _Kit) -> Node:
    counts = sen_counts(spec)
    n = spec.n
    per_path = counts.network_or_inputs
    rest_inputs = range(1, n // 2)
    upper = range(n // 2, n // 2 + per_path)
    lower = range(n // 2 + per_path, n // 2 + 2 * per_path)
    outputs = range(n // 2 + 2 * per_path, n + 2 * per_path)
    # AND pair j owns ids 2j and 2j+1, packed right after the outputs
    first_pair = (n + 2 * per_path) // 2
    pairs = range(first_pair, first_pair + counts.and_gate_count)
    all_inputs = spec.spares is Spares.ALL_INPUTS
    return kit.any_(
        [
            kit.leaf(0, spec.spares is not Spares.NONE),
            kit.any_(kit.leaf(i, all_inputs) for i in rest_inputs),
            kit.all_([kit.group(upper), kit.group(lower)]),
            kit.group(outputs),
            *(kit.all_([kit.plain(2 * j), kit.plain(2 * j + 1)]) for j in pairs),
        ]
    )


def build_model(spec: SenModelSpec) -> Node:
    kit = _Kit(spec)
    if spec.variant is Variant.SEN:
        return _sen(spec, kit)
    if spec.analysis is Analysis.TERMINAL:
        return _sen_plus_terminal(spec, kit)
    if spec.analysis is Analysis.BROADCAST:
        return _sen_plus_broadcast(spec, kit)
    return _sen_plus_network(spec, kit)


def model_metadata(spec: SenModelSpec) -> dict:
    return {
        "generator": spec.to_dict(),
        "counts": sen_counts(spec).to_dict(),
        "extrapolated": is_extrapolated(spec),
    }


PRESET_RATE = 1e-5
PRESET_DORMANCY = 0.1


def preset_paper_128(analysis, formalism) -> tuple[SenModelSpec, Node]:
    """128x128 SEN+ reference setup: rate 1e-5/h, dormancy 0.1, spares on
    the input (and output) switch, or on all 64 input switches for the
    network analysis."""
    analysis = Analysis(analysis)
    spares = Spares.ALL_INPUTS if analysis is Analysis.NETWORK else Spares.PAPER_DEFAULT
    spec = SenModelSpec(
        n=128,
        variant=Variant.SEN_PLUS,
        analysis=analysis,
        formalism=Formalism(formalism),
        spares=spares,
        rate=PRESET_RATE,
        dormancy=PRESET_DORMANCY,
    )
    return spec, build_model(spec)

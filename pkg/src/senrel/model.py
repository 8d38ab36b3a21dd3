"""Model trees for dynamic fault trees (DFT) and dynamic RBDs (DRBD).

A DFT describes failure: ``NOr`` fails when any input fails, ``NAnd`` when
all inputs fail.  A DRBD describes success: ``Series`` works when every
child works, ``Parallel`` when at least one does.  Warm spares (``Wsp`` /
``RWsp``) are leaves holding a main component and one spare.

The two formalisms are duals.  ``dft_to_drbd`` maps a DFT onto the DRBD
whose success event is the complement of the DFT's top event, and
``drbd_to_dft`` goes back.

Trees are immutable; gate children are stored as tuples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Union

from senrel.dist import FailureDistribution


@dataclass(frozen=True)
class BasicEvent:
    id: int
    dist: FailureDistribution


@dataclass(frozen=True)
class Wsp:
    """Warm spare gate: ``main`` backed by a spare that ages at
    ``spare_dormant`` until activation and at ``spare_active`` after."""

    id: int
    main: FailureDistribution
    spare_active: FailureDistribution
    spare_dormant: FailureDistribution


@dataclass(frozen=True)
class NOr:
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class NAnd:
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class Block:
    id: int
    dist: FailureDistribution


@dataclass(frozen=True)
class RWsp:
    """Spare construct: the DRBD counterpart of :class:`Wsp`."""

    id: int
    main: FailureDistribution
    spare_active: FailureDistribution
    spare_dormant: FailureDistribution


@dataclass(frozen=True)
class Series:
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class Parallel:
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


DftNode = Union[BasicEvent, Wsp, NOr, NAnd]
DrbdNode = Union[Block, RWsp, Series, Parallel]
Node = Union[DftNode, DrbdNode]

DFT_LEAVES = (BasicEvent, Wsp)
DFT_GATES = (NOr, NAnd)
DRBD_LEAVES = (Block, RWsp)
DRBD_GATES = (Series, Parallel)
LEAVES = DFT_LEAVES + DRBD_LEAVES
GATES = DFT_GATES + DRBD_GATES


def formalism_of(node: Node) -> str:
    if isinstance(node, DFT_LEAVES + DFT_GATES):
        return "dft"
    if isinstance(node, DRBD_LEAVES + DRBD_GATES):
        return "drbd"
    raise TypeError(f"not a model node: {node!r}")


def is_dft(node: Node) -> bool:
    return formalism_of(node) == "dft"


def leaves(node: Node) -> Iterator[Node]:
    """Leaves in depth-first, left-to-right order."""
    if isinstance(node, GATES):
        for child in node.children:
            yield from leaves(child)
    else:
        yield node


def component_ids(node: Node) -> set[int]:
    return {leaf.id for leaf in leaves(node)}


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, where) -> None:
        self.violations.append((rule, where))

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"{rule}: {where}" for rule, where in self.violations)


class ValidationError(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__(f"invalid model: {report}")
        self.report = report


def validate(node: Node) -> ValidationReport:
    """Check the structural hypotheses the evaluators rely on.

    Rules: ``unknown-node``, ``mixed-formalism`` (DFT and DRBD nodes in one
    tree), ``empty-gate``, ``bad-id`` (ids must be non-negative integers)
    and ``duplicate-id``.  Violations are collected, never raised.
    """
    report = ValidationReport()
    seen: set[int] = set()
    try:
        expected = formalism_of(node)
    except TypeError:
        report.add("unknown-node", "root")
        return report

    stack = [(node, "root")]
    while stack:
        current, path = stack.pop()
        try:
            kind = formalism_of(current)
        except TypeError:
            report.add("unknown-node", path)
            continue
        if kind != expected:
            report.add("mixed-formalism", path)
        if isinstance(current, GATES):
            if not current.children:
                report.add("empty-gate", path)
            # reversed so violations come out in left-to-right order
            for i in reversed(range(len(current.children))):
                stack.append((current.children[i], f"{path}/{i}"))
            continue
        ident = current.id
        if not isinstance(ident, int) or isinstance(ident, bool) or ident < 0:
            report.add("bad-id", path)
            continue
        if ident in seen:
            report.add("duplicate-id", ident)
        seen.add(ident)
    return report


def require_valid(node: Node) -> None:
    report = validate(node)
    if not report.ok:
        raise ValidationError(report)


_TO_DRBD = {NOr: Series, NAnd: Parallel}
_TO_DFT = {Series: NOr, Parallel: NAnd}


def _dft_to_drbd(node: DftNode) -> DrbdNode:
    if isinstance(node, BasicEvent):
        return Block(node.id, node.dist)
    if isinstance(node, Wsp):
        return RWsp(node.id, node.main, node.spare_active, node.spare_dormant)
    return _TO_DRBD[type(node)](tuple(_dft_to_drbd(c) for c in node.children))


def _drbd_to_dft(node: DrbdNode) -> DftNode:
    if isinstance(node, Block):
        return BasicEvent(node.id, node.dist)
    if isinstance(node, RWsp):
        return Wsp(node.id, node.main, node.spare_active, node.spare_dormant)
    return _TO_DFT[type(node)](tuple(_drbd_to_dft(c) for c in node.children))


def dft_to_drbd(node: DftNode) -> DrbdNode:
    """DRBD whose success event is the complement of the DFT top event.

    OR becomes series, AND becomes parallel, leaves keep ids and laws.
    """
    require_valid(node)
    if not is_dft(node):
        raise TypeError("dft_to_drbd expects a DFT tree")
    return _dft_to_drbd(node)


def drbd_to_dft(node: DrbdNode) -> DftNode:
    require_valid(node)
    if is_dft(node):
        raise TypeError("drbd_to_dft expects a DRBD tree")
    return _drbd_to_dft(node)


def complement_twin(node: Node) -> Node:
    return dft_to_drbd(node) if is_dft(node) else drbd_to_dft(node)


# persistence

_KIND = {
    NOr: "or",
    NAnd: "and",
    Series: "series",
    Parallel: "parallel",
    BasicEvent: "basic",
    Block: "block",
    Wsp: "wsp",
    RWsp: "wsp",
}
_GATE_BY_KIND = {"or": NOr, "and": NAnd, "series": Series, "parallel": Parallel}


def node_to_dict(node: Node) -> dict:
    kind = _KIND[type(node)]
    if isinstance(node, GATES):
        return {"kind": kind, "children": [node_to_dict(c) for c in node.children]}
    if isinstance(node, (Wsp, RWsp)):
        return {
            "kind": kind,
            "id": node.id,
            "rate": node.main.rate,
            "spare_active_rate": node.spare_active.rate,
            "spare_dormant_rate": node.spare_dormant.rate,
        }
    return {"kind": kind, "id": node.id, "rate": node.dist.rate}


def node_from_dict(data: dict, formalism: str) -> Node:
    """Inverse of :func:`node_to_dict`; ``formalism`` decides which class a
    ``"wsp"`` leaf becomes."""
    try:
        kind = data["kind"]
    except (TypeError, KeyError):
        raise ValueError(f"model node without a kind: {data!r}") from None
    if kind in _GATE_BY_KIND:
        children = data.get("children")
        if not isinstance(children, list):
            raise ValueError(f"{kind} gate needs a children array")
        return _GATE_BY_KIND[kind](tuple(node_from_dict(c, formalism) for c in children))
    if kind not in ("basic", "block", "wsp"):
        raise ValueError(f"unknown node kind {kind!r}")
    try:
        ident = data["id"]
        main = FailureDistribution(float(data["rate"]))
        if kind == "wsp":
            active = FailureDistribution(float(data["spare_active_rate"]))
            dormant = FailureDistribution(float(data["spare_dormant_rate"]))
    except KeyError as exc:
        raise ValueError(f"{kind} leaf missing field {exc.args[0]!r}") from None
    if kind == "wsp":
        cls = Wsp if formalism == "dft" else RWsp
        return cls(ident, main, active, dormant)
    if kind == "basic":
        return BasicEvent(ident, main)
    return Block(ident, main)


def model_to_dict(node: Node, metadata: dict | None = None) -> dict:
    doc = {"formalism": formalism_of(node), "root": node_to_dict(node)}
    if metadata is not None:
        doc["metadata"] = metadata
    return doc


def model_from_dict(doc: dict) -> tuple[Node, dict]:
    formalism = doc.get("formalism") if isinstance(doc, dict) else None
    if formalism not in ("dft", "drbd"):
        raise ValueError('model "formalism" must be "dft" or "drbd"')
    if "root" not in doc:
        raise ValueError('model has no "root"')
    return node_from_dict(doc["root"], formalism), doc.get("metadata", {})


def dump_model(node: Node, path, metadata: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(model_to_dict(node, metadata), fh, indent=1)
        fh.write("\n")


def load_model(path) -> tuple[Node, dict]:
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))

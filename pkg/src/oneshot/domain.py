"""Domain declarations: predicate modes, search bounds, expansion rules
and the constraint vocabulary offered to the teacher."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .logic import BUILTIN_ARITY, LogicError
from .plans import ExpansionRule, rule_index

IO_MARKS = ("+", "-", "#")


@dataclass(frozen=True)
class ModeDecl:
    """Mode declaration for one predicate: an input/output/constant mark
    and a type name per argument slot, plus an optional recall bound."""

    pred: str
    slots: tuple[tuple[str, str], ...]  # (mark, type)
    recall: int = 0  # 0 = unbounded

    def __post_init__(self) -> None:
        for mark, _ in self.slots:
            if mark not in IO_MARKS:
                raise LogicError(f"bad mode mark {mark!r} for {self.pred}")

    @property
    def arity(self) -> int:
        return len(self.slots)

    def render(self) -> str:
        inner = ", ".join(f"{m}{t}" for m, t in self.slots)
        return f"{self.pred}({inner})"


@dataclass(frozen=True)
class ConstraintTemplate:
    """One library entry, e.g. Sub(x:int, y:int, n:int) meaning y - x = n.
    The trailing slot of Sub is derived from the other two when candidates
    are enumerated."""

    pred: str
    arg_types: tuple[str, ...]
    semantics: str
    arg_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.pred not in BUILTIN_ARITY:
            raise LogicError(f"constraint template {self.pred} has no built-in semantics")
        if len(self.arg_types) != BUILTIN_ARITY[self.pred]:
            raise LogicError(f"constraint template {self.pred} has wrong arity")
        if self.arg_names and len(self.arg_names) != len(self.arg_types):
            raise LogicError(f"constraint template {self.pred} has mismatched names")

    def gloss(self, rendered_args: tuple[str, ...]) -> str:
        """Instantiate the semantics text with concrete argument renderings."""
        if not self.arg_names:
            return self.semantics
        out = self.semantics
        for name, val in zip(self.arg_names, rendered_args):
            out = re.sub(rf"\b{re.escape(name)}\b", val, out)
        return out


# ranked most-specific first; used to order query candidates
SPECIFICITY = {"Sub": 0, "Equal": 1, "Greater": 2, "Geq": 3}


@dataclass(frozen=True)
class ConstraintLibrary:
    templates: tuple[ConstraintTemplate, ...]

    def __post_init__(self) -> None:
        preds = [t.pred for t in self.templates]
        if len(preds) != len(set(preds)):
            raise LogicError("duplicate constraint template")

    def has(self, pred: str) -> bool:
        return any(t.pred == pred for t in self.templates)

    @property
    def size(self) -> int:
        return len(self.templates)

    @property
    def max_arity(self) -> int:
        return max((len(t.arg_types) for t in self.templates), default=0)

    def template(self, pred: str) -> ConstraintTemplate | None:
        for t in self.templates:
            if t.pred == pred:
                return t
        return None

    def semantics(self, pred: str) -> str:
        t = self.template(pred)
        return t.semantics if t else ""


@dataclass
class Domain:
    """Everything a session needs to know about the problem domain."""

    modes: dict[str, ModeDecl] = field(default_factory=dict)
    rules: tuple[ExpansionRule, ...] = ()
    keep_constants: frozenset[str] = frozenset()
    depth_bound: int = 3  # i: max variable depth in the bottom clause
    arity_bound: int = 3  # j: max predicate arity
    max_body: int = 20

    def __post_init__(self) -> None:
        self.rule_map = rule_index(self.rules)

    def mode_for(self, pred: str) -> ModeDecl | None:
        return self.modes.get(pred)

    def slot_type(self, pred: str, idx: int) -> str | None:
        m = self.modes.get(pred)
        if m is None or idx >= m.arity:
            return None
        return m.slots[idx][1]

"""Adaptive measurement plans: fixed site order, outcome-dependent bases."""

import itertools
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from src.exceptions import ProtocolError, ValidationError

PLAN_LABELS = ("X", "Z", "A0", "A1", "I")

History = tuple[int, ...]
OrderRule = Callable[[int, History], int]


def histories(length: int) -> Iterator[History]:
    """Every +-1 outcome history of ``length`` steps, +1 first."""
    return itertools.product((1, -1), repeat=length)


@dataclass(frozen=True)
class StepRule:
    """Basis of one step: ``default`` unless the prior history has an override."""

    default: str
    overrides: Mapping[History, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for label in (self.default, *self.overrides.values()):
            if label not in PLAN_LABELS:
                raise ValidationError("Unknown plan basis", details={"label": label,
                                                                    "allowed": list(PLAN_LABELS)})

    def basis(self, history: History) -> str:
        return self.overrides.get(tuple(history), self.default)


@dataclass(frozen=True)
class AdaptivePlan:
    """Measurement plan over n sites.

    Step j measures site ``order[j]`` in ``rules[j].basis(history)``, where
    history holds the outcomes of steps 0..j-1. ``order_rule`` exists only to
    model plans whose site order depends on outcomes; schedules reject them.
    """

    order: tuple[int, ...]
    rules: tuple[StepRule, ...]
    order_rule: OrderRule | None = None

    def __post_init__(self) -> None:
        order = tuple(int(v) for v in self.order)
        if sorted(order) != list(range(len(order))):
            raise ValidationError("Plan order must be a permutation of the sites",
                                  details={"order": list(order)})
        if len(self.rules) != len(order):
            raise ValidationError("One rule per step is required",
                                  details={"steps": len(order), "rules": len(self.rules)})
        for j, rule in enumerate(self.rules):
            for history in rule.overrides:
                if len(history) != j or any(k not in (1, -1) for k in history):
                    raise ValidationError("Override history does not fit its step",
                                          details={"step": j, "history": list(history)})
        object.__setattr__(self, "order", order)

    @property
    def n(self) -> int:
        return len(self.order)

    def basis(self, step: int, history: Sequence[int]) -> str:
        return self.rules[step].basis(tuple(history))

    def site_at(self, stage: int, history: Sequence[int]) -> int:
        """Site measured at ``stage`` given the outcomes so far."""
        if self.order_rule is not None:
            return self.order_rule(stage, tuple(history))
        return self.order[stage]

    def is_adaptive(self) -> bool:
        return any(rule.overrides for rule in self.rules)

    @classmethod
    def fixed(cls, labels: Sequence[str], order: Sequence[int] | None = None) -> "AdaptivePlan":
        """Non-adaptive plan measuring ``labels[j]`` at step j."""
        order = tuple(range(len(labels))) if order is None else tuple(order)
        return cls(order, tuple(StepRule(label) for label in labels))

    @classmethod
    def from_function(
        cls, order: Sequence[int], choose: Callable[[int, History], str]
    ) -> "AdaptivePlan":
        """Tabulate ``choose(step, history)`` over every history."""
        rules = []
        for j in range(len(order)):
            table = {h: choose(j, h) for h in histories(j)}
            default = table[(1,) * j]
            rules.append(StepRule(default, {h: b for h, b in table.items() if b != default}))
        return cls(tuple(order), tuple(rules))

    def to_dict(self) -> dict[str, Any]:
        if self.order_rule is not None:
            raise ProtocolError("Plans with an order rule cannot be serialized")
        return {
            "order": list(self.order),
            "steps": [
                {
                    "default": rule.default,
                    "overrides": [{"history": list(h), "basis": b} for h, b in rule.overrides.items()],
                }
                for rule in self.rules
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "AdaptivePlan":
        try:
            rules = tuple(
                StepRule(
                    step["default"],
                    {tuple(o["history"]): o["basis"] for o in step.get("overrides", [])},
                )
                for step in data["steps"]
            )
            return cls(tuple(data["order"]), rules)
        except (KeyError, TypeError) as exc:
            raise ValidationError("Malformed plan", details={"error": str(exc)}) from exc

"""Weighted composite index definitions and evaluation.

A definition lists components with published weights (any positive scale);
evaluation renormalizes the weights to sum to 1, so presets can carry the
weights exactly as published even when they do not add up to 100 percent.
Definitions nest one level (component -> sub-indicators), and a component's
score may be given directly or derived from its sub-indicator scores.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .dataset import Dataset
from .errors import DefinitionError, DegenerateDataError, ValidationError

SCORE_MIN = 0.0
SCORE_MAX = 100.0


@dataclass(frozen=True)
class IndexComponent:
    name: str
    weight: float
    sub: "IndexDefinition | None" = None


@dataclass(frozen=True)
class IndexDefinition:
    name: str
    components: tuple[IndexComponent, ...]
    normalization: str = "none"

    def __post_init__(self) -> None:
        if not self.components:
            raise DefinitionError(f"index {self.name!r} has no components")
        if self.normalization not in ("none", "min-max"):
            raise DefinitionError(f"unknown normalization {self.normalization!r}")
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise DefinitionError(f"index {self.name!r} has duplicate component names")
        total = 0.0
        for c in self.components:
            if not c.weight > 0.0:
                raise DefinitionError(
                    f"component {c.name!r} of {self.name!r} has non-positive weight"
                )
            if c.sub is not None:
                for inner in c.sub.components:
                    if inner.sub is not None:
                        raise DefinitionError(
                            f"component {inner.name!r} nests deeper than 2 levels"
                        )
            total += c.weight
        if total <= 0.0:
            raise DefinitionError(f"index {self.name!r} has zero total weight")

    @property
    def normalized_weights(self) -> dict[str, float]:
        total = sum(c.weight for c in self.components)
        return {c.name: c.weight / total for c in self.components}


@dataclass(frozen=True)
class IndexScore:
    value: float
    contributions: dict[str, float] = field(default_factory=dict)
    country: str | None = None


def _component_score(component: IndexComponent, scores: Mapping[str, float],
                     index_name: str) -> float:
    if component.name in scores:
        value = float(scores[component.name])
        if not SCORE_MIN <= value <= SCORE_MAX:
            raise ValidationError(
                f"score for {component.name!r} is {value!r}, outside [0, 100]"
            )
        return value
    if component.sub is not None:
        return compute_composite(component.sub, scores).value
    raise DefinitionError(
        f"no score supplied for component {component.name!r} of {index_name!r}"
    )


def compute_composite(definition: IndexDefinition, scores: Mapping[str, float],
                      country: str | None = None) -> IndexScore:
    """Renormalized weighted sum of component scores, with per-component contributions."""
    weights = definition.normalized_weights
    contributions: dict[str, float] = {}
    for component in definition.components:
        value = _component_score(component, scores, definition.name)
        contributions[component.name] = weights[component.name] * value
    return IndexScore(value=math.fsum(contributions.values()),
                      contributions=contributions, country=country)


def compute_sii_from_pillars(pillars: Sequence[float]) -> float:
    """Composite from the four pillar scores, in published pillar order."""
    definition = preset("sii-2016")
    if len(pillars) != len(definition.components):
        raise ValidationError(f"expected 4 pillar scores, got {len(pillars)}")
    scores = {c.name: float(v) for c, v in zip(definition.components, pillars)}
    return compute_composite(definition, scores).value


def compute_idesi(dimensions: Sequence[float]) -> float:
    """Composite from the five dimension scores, in published dimension order."""
    definition = preset("idesi-2020")
    if len(dimensions) != len(definition.components):
        raise ValidationError(f"expected 5 dimension scores, got {len(dimensions)}")
    scores = {c.name: float(v) for c, v in zip(definition.components, dimensions)}
    return compute_composite(definition, scores).value


def min_max_normalize(values: Sequence[float], lo: float, hi: float) -> list[float]:
    """Rescale values to [0, 100] between fixed bounds, clamping out-of-range inputs."""
    if not hi > lo:
        raise DegenerateDataError(f"normalization needs hi > lo, got [{lo}, {hi}]")
    span = hi - lo
    return [min(100.0, max(0.0, 100.0 * (float(v) - lo) / span)) for v in values]


def rank(dataset: Dataset, column: str) -> list[tuple[int, str, float]]:
    """(rank, country, score) rows, descending; ties share the smaller rank."""
    name = dataset.resolve_column(column)
    scored = [(rec.name, rec.values[name]) for rec in dataset.records]
    ordered = sorted(scored, key=lambda pair: -pair[1])
    out: list[tuple[int, str, float]] = []
    for position, (country, score) in enumerate(ordered):
        if out and score == out[-1][2]:
            shared = out[-1][0]
        else:
            shared = position + 1
        out.append((shared, country, score))
    return out


def parse_definition(text: str, name: str,
                     normalization: str = "none") -> IndexDefinition:
    """Build a definition from declarative text: `component, weight` per line,
    with indented lines forming the previous component's sub-indicators."""
    top: list[tuple[str, float, list[IndexComponent]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        indented = raw[0] in (" ", "\t")
        head, sep, tail = raw.strip().rpartition(",")
        if not sep:
            raise DefinitionError(f"line {lineno}: expected 'name, weight', got {raw.strip()!r}")
        try:
            weight = float(tail)
        except ValueError:
            raise DefinitionError(f"line {lineno}: bad weight {tail.strip()!r}") from None
        component_name = head.strip()
        if not component_name:
            raise DefinitionError(f"line {lineno}: empty component name")
        if indented:
            if not top:
                raise DefinitionError(f"line {lineno}: sub-component before any component")
            top[-1][2].append(IndexComponent(component_name, weight))
        else:
            top.append((component_name, weight, []))
    components = tuple(
        IndexComponent(
            n, w,
            sub=IndexDefinition(n, tuple(subs)) if subs else None,
        )
        for n, w, subs in top
    )
    return IndexDefinition(name=name, components=components, normalization=normalization)


_PRESET_TEXTS = {
    "sii-2016": """\
Policy and institutional framework, 44.44
  Existence of national policy on social innovation, 25
  Social innovation research and impact, 20
  Legal framework for social enterprises, 20
  Effectiveness of system in policy implementation, 20
  The rule of law, 15
Financing, 22.22
  Availability of government financing to promote social innovation, 50
  Ease of getting credit, 25
  Total public social expenditure, 25
Entrepreneurship, 15
  Risk-taking mind-set, 25
  Citizens' attitude towards entrepreneurship, 25
  Ease of starting a business, 25
  Development of clusters, 25
Society, 18.33
  Culture of volunteerism, 20
  Political participation, 20
  Civil society engagement, 20
  Trust in society, 20
  Press freedom, 20
""",
    "idesi-2020": """\
Connectivity, 0.25
Human capital, 0.25
Use of the internet, 0.15
Integration of digital technology, 0.2
Digital public services, 0.15
""",
}


def preset(name: str) -> IndexDefinition:
    """A built-in index definition by preset name."""
    if name not in _PRESET_TEXTS:
        raise DefinitionError(
            f"unknown preset {name!r}; available: {', '.join(sorted(_PRESET_TEXTS))}"
        )
    return parse_definition(_PRESET_TEXTS[name], name=name)


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(_PRESET_TEXTS))

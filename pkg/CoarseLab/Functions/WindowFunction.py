import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Optional, Sequence, Union

from CoarseLab.Group.Element import Element
from CoarseLab.Group.Window import Window
from CoarseLab.Metric.GeneratorSystem import GeneratorSystem
from CoarseLab.Utils.Errors import ConfigError

logger = logging.getLogger(__name__)

SUPPORT_SIZE = "support-size"
PARITY = "parity"
COORDINATE_INDICATOR = "coordinate-indicator"
POINT_INDICATOR = "point-indicator"
AFFINE = "affine"
EXP_SUPPORT = "exp-support"
GENERATOR_INDEX = "generator-index"
TABLE = "table"
FAMILIES = (SUPPORT_SIZE, PARITY, COORDINATE_INDICATOR, POINT_INDICATOR, AFFINE, EXP_SUPPORT,
            GENERATOR_INDEX, TABLE)

Number = Union[int, Fraction, str]


def fraction_json(value: Fraction):
    """Integers stay integers; other rationals become "p/q" strings."""
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class WindowFunction:
    """
    A rational-valued function on the points of a window, stored as a total value table.

    Attributes:
        window (Window): the domain.
        values (dict[Element, Fraction]): one value per window element.
        name (str): family name, or "table" for explicit values.
    """
    window: Window
    values: Dict[Element, Fraction] = field(compare=False)
    name: str = TABLE

    def __post_init__(self):
        missing = [x for x in self.window.elements if x not in self.values]
        if missing:
            raise ConfigError(f"function has no value at {len(missing)} window points, first {missing[0]!r}")
        extra = [x for x in self.values if x not in self.window]
        if extra:
            raise ConfigError(f"function has values outside the window, first {extra[0]!r}")

    def __call__(self, x: Element) -> Fraction:
        return self.values[x]

    @property
    def is_binary(self) -> bool:
        return all(v in (0, 1) for v in self.values.values())

    @classmethod
    def from_callable(cls, window: Window, function: Callable[[Element], Number], name: str = TABLE) -> "WindowFunction":
        return cls(window, {x: Fraction(function(x)) for x in window.elements}, name)

    @classmethod
    def from_table(cls, window: Window, rows: Iterable) -> "WindowFunction":
        """Explicit values from [[entries, value], ...] rows; values may be "p/q" strings."""
        spec = window.spec
        values = {}
        for entries, value in rows:
            x = spec.element(entries)
            if x in values:
                raise ConfigError(f"duplicate value for {x!r}")
            values[x] = Fraction(value)
        return cls(window, values, TABLE)

    @classmethod
    def family(cls, name: str, window: Window, system: Optional[GeneratorSystem] = None,
               coordinate: int = 0, point: Optional[Element] = None, coefficients: Sequence[Number] = (1,),
               offset: Number = 0, base: int = 2, table: Optional[Iterable] = None) -> "WindowFunction":
        """
        Build a built-in family on `window`.

        Families:
            support-size: |support(x)|.
            parity: |support(x)| mod 2.
            coordinate-indicator: 1 when `coordinate` ∈ support(x).
            point-indicator: 1 at `point`, else 0.
            affine: Σ_i coefficients[i]·x_i + offset (Z and Z^d coordinates).
            exp-support: base^|support(x)|.
            generator-index: n + 1 at the first n with x = a_n, else 0.
            table: explicit `table` rows.

        Raises:
            ConfigError: unknown family or missing parameter.
        """
        if name == SUPPORT_SIZE:
            return cls.from_callable(window, lambda x: len(x.support), name)
        if name == PARITY:
            return cls.from_callable(window, lambda x: len(x.support) % 2, name)
        if name == COORDINATE_INDICATOR:
            return cls.from_callable(window, lambda x: int(coordinate in x.support), name)
        if name == POINT_INDICATOR:
            if point is None:
                raise ConfigError("point-indicator needs a point")
            return cls.from_callable(window, lambda x: int(x == point), name)
        if name == AFFINE:
            weights = [Fraction(c) for c in coefficients]
            return cls.from_callable(
                window, lambda x: sum(w * x.value(i) for i, w in enumerate(weights)) + Fraction(offset), name)
        if name == EXP_SUPPORT:
            return cls.from_callable(window, lambda x: base ** len(x.support), name)
        if name == GENERATOR_INDEX:
            if system is None:
                raise ConfigError("generator-index needs the generator system")
            index = {}
            for n, a in enumerate(system.generators):
                index.setdefault(a, n + 1)
            return cls.from_callable(window, lambda x: index.get(x, 0), name)
        if name == TABLE:
            if table is None:
                raise ConfigError("table function needs explicit values")
            return cls.from_table(window, table)
        raise ConfigError(f"Unknown function family: {name}")

    def translate(self, g: Element) -> "WindowFunction":
        """x ↦ f(x - g) on the translated window."""
        spec = self.window.spec
        return WindowFunction(self.window.translate(g),
                              {spec.add(x, g): v for x, v in self.values.items()}, self.name)

    def to_json(self) -> dict:
        return {"name": self.name, "binary": self.is_binary,
                "values": [[x.to_json()["entries"], fraction_json(self.values[x])] for x in self.window.elements]}

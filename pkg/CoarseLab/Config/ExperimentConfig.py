from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from CoarseLab.Group.Element import Element
from CoarseLab.Group.GroupSpec import BOUNDED_SUM, GroupSpec
from CoarseLab.Group.Window import BoxShape, SupportShape
from CoarseLab.Metric.GeneratorSystem import GeneratorSystem

TOOL_VERSION = "0.3.0"


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class BoundedSumGroup(StrictModel):
    kind: Literal["bounded_sum"]
    modulus: Optional[int] = None
    moduli: Optional[List[int]] = None
    coordinate_bound: Optional[int] = None

    def to_spec(self) -> GroupSpec:
        return GroupSpec.bounded_sum(self.modulus, self.moduli, self.coordinate_bound)


class IntegersGroup(StrictModel):
    kind: Literal["integers"]

    def to_spec(self) -> GroupSpec:
        return GroupSpec.integers()


class LatticeGroup(StrictModel):
    kind: Literal["lattice"]
    rank: int = Field(ge=1)

    def to_spec(self) -> GroupSpec:
        return GroupSpec.lattice(self.rank)


GroupConfig = Annotated[Union[BoundedSumGroup, IntegersGroup, LatticeGroup], Field(discriminator="kind")]


class ListGenerators(StrictModel):
    kind: Literal["list"]
    values: List[Any] = Field(min_length=1)

    def to_system(self, spec: GroupSpec) -> GeneratorSystem:
        return GeneratorSystem.from_values(spec, self.values)


class PowersGenerators(StrictModel):
    kind: Literal["powers"]
    base: int
    count: int = Field(ge=1)

    def to_system(self, spec: GroupSpec) -> GeneratorSystem:
        return GeneratorSystem.powers(spec, self.base, self.count)


class BasisGenerators(StrictModel):
    kind: Literal["basis"]
    count: int = Field(ge=1)

    def to_system(self, spec: GroupSpec) -> GeneratorSystem:
        return GeneratorSystem.basis(spec, self.count)


GeneratorConfig = Annotated[Union[ListGenerators, PowersGenerators, BasisGenerators], Field(discriminator="kind")]


class SupportWindow(StrictModel):
    kind: Literal["support"]
    indices: List[int]

    def to_shape(self) -> SupportShape:
        return SupportShape(tuple(self.indices))


class BoxWindow(StrictModel):
    kind: Literal["box"]
    intervals: List[Tuple[int, int]] = Field(min_length=1)

    def to_shape(self) -> BoxShape:
        return BoxShape(tuple(tuple(interval) for interval in self.intervals))


WindowConfig = Annotated[Union[SupportWindow, BoxWindow], Field(discriminator="kind")]


class StageConfig(StrictModel):
    n: int = Field(ge=0)
    centers: List[Any] = Field(min_length=1)


class FunctionConfig(StrictModel):
    """A built-in function family with its parameters, or an explicit value table."""
    family: str = "support-size"
    coordinate: int = 0
    point: Optional[Any] = None
    coefficients: List[Union[int, str]] = Field(default_factory=lambda: [1])
    offset: Union[int, str] = 0
    base: int = 2
    table: Optional[List[Tuple[Any, Union[int, str]]]] = None


class ExperimentConfig(StrictModel):
    """
    One experiment: the group, its generators, an optional window and the parameters of
    every command. Elements are written as integers on Z, integer vectors on Z^d, or entry
    lists [[index, value], ...] on any group.
    """
    group: GroupConfig
    generators: GeneratorConfig
    window: Optional[WindowConfig] = None

    x: Optional[Any] = None
    y: Optional[Any] = None
    n: int = Field(default=1, ge=0)
    centers: Optional[List[Any]] = None
    points: Optional[List[Any]] = None
    k: int = Field(default=1, ge=1)
    max_r: Optional[int] = Field(default=None, ge=0)
    sequences: Optional[List[List[Any]]] = None

    target_len: int = Field(default=4, ge=0)
    scan_limit: Optional[int] = Field(default=None, ge=0)
    verify_support: Optional[int] = Field(default=None, ge=0)
    sequence: Optional[List[Any]] = None
    pairs: int = Field(default=1000, ge=0)
    exhaustive_support: int = Field(default=0, ge=0)

    r: int = Field(default=1, ge=0)
    r_list: List[int] = Field(default_factory=lambda: [1])
    D: Optional[int] = Field(default=None, ge=0)
    candidates: Literal["singletons", "balls", "bricks"] = "singletons"
    candidate_size: Optional[int] = Field(default=None, ge=0)
    candidate_step: Optional[int] = Field(default=None, ge=1)
    classes: Optional[List[List[List[Any]]]] = None
    d_scale: int = 5
    d_offset: int = 0
    budget: Optional[int] = Field(default=None, ge=1)

    function: FunctionConfig = Field(default_factory=FunctionConfig)
    interior_margin: Optional[int] = Field(default=None, ge=0)
    stages: Optional[List[StageConfig]] = None

    seed: int = 0
    output: Optional[str] = None
    csv_output: Optional[str] = None

    @model_validator(mode="after")
    def _check_window_kind(self):
        if self.window is not None:
            bounded = self.group.kind == BOUNDED_SUM
            if bounded != (self.window.kind == "support"):
                raise ValueError("support-windows need a bounded_sum group, box-windows Z or Z^d")
        return self

    def spec(self) -> GroupSpec:
        return self.group.to_spec()

    def system(self, spec: Optional[GroupSpec] = None) -> GeneratorSystem:
        return self.generators.to_system(spec or self.spec())

    def echo(self) -> Dict[str, Any]:
        """The config as it round-trips: defaults included, absent optionals dropped."""
        return self.model_dump(mode="json", exclude_none=True)


def element_of(spec: GroupSpec, value) -> Element:
    """Read one element in the config notation."""
    if isinstance(value, int):
        return spec.from_int(value)
    if value and all(isinstance(v, int) for v in value) and spec.kind != BOUNDED_SUM:
        return spec.from_vector(value)
    return spec.element(value)


class RunReport(StrictModel):
    """Everything one command run produced; `config` is the exact effective configuration."""
    command: str
    tool_version: str = TOOL_VERSION
    config: Dict[str, Any]
    duration_seconds: float
    result: Dict[str, Any]
    verdict: Optional[Literal["ok", "violated", "inconclusive"]] = None
    exit_code: int = 0

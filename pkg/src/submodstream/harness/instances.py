"""Instance files: a versioned JSON schema for (matroid, objective) pairs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..hardness import Layer, LayeredFunction
from ..matroid import GraphicMatroid, Matroid, PartitionMatroid, UniformMatroid
from ..objective import CoverageFunction, CutFunction, ModularFunction, SubmodularFunction

SCHEMA_VERSION = 1


class InstanceError(ValueError):
    pass


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class UniformSpec(_Strict):
    type: Literal["uniform"]
    k: int = Field(ge=0)


class PartitionSpec(_Strict):
    type: Literal["partition"]
    blocks: list[int]
    capacities: list[int]


class GraphicSpec(_Strict):
    type: Literal["graphic"]
    n_vertices: int = Field(ge=1)
    edges: list[tuple[int, int]]


MatroidSpec = Annotated[Union[UniformSpec, PartitionSpec, GraphicSpec], Field(discriminator="type")]


class CoverageSpec(_Strict):
    type: Literal["coverage"]
    sets: list[list[int]]
    weights: list[float]


class CutSpec(_Strict):
    type: Literal["cut"]
    n_vertices: int = Field(ge=1)
    edges: list[tuple[int, int, float]]


class ModularSpec(_Strict):
    type: Literal["modular"]
    weights: list[float]


class LayerSpec(_Strict):
    edges: list[tuple[int, int]]
    m: float = Field(gt=0)
    o: int = Field(ge=1)


class HardnessSpec(_Strict):
    type: Literal["hardness-family"]
    p: int = Field(ge=1)
    n: int = Field(ge=1)
    layers: list[LayerSpec]

    @model_validator(mode="after")
    def _layer_count(self):
        if len(self.layers) != self.p:
            raise ValueError(f"p={self.p} but {len(self.layers)} layers given")
        return self


ObjectiveSpec = Annotated[
    Union[CoverageSpec, CutSpec, ModularSpec, HardnessSpec], Field(discriminator="type")
]


class InstanceFile(_Strict):
    schema_: Literal[1] = Field(alias="schema", default=1)
    ground_size: int = Field(ge=0)
    matroid: MatroidSpec
    objective: ObjectiveSpec
    name: str | None = None
    seed: int | None = None

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(by_alias=True, exclude_none=True), sort_keys=True, indent=1)


def build_matroid(spec: MatroidSpec, ground_size: int) -> Matroid:
    if isinstance(spec, UniformSpec):
        return UniformMatroid(ground_size, spec.k)
    if isinstance(spec, PartitionSpec):
        return PartitionMatroid(spec.blocks, spec.capacities)
    return GraphicMatroid(spec.n_vertices, spec.edges)


def build_objective(spec: ObjectiveSpec) -> SubmodularFunction:
    if isinstance(spec, CoverageSpec):
        return CoverageFunction(spec.sets, spec.weights)
    if isinstance(spec, CutSpec):
        return CutFunction(spec.n_vertices, spec.edges)
    if isinstance(spec, ModularSpec):
        return ModularFunction(spec.weights)
    layers = [Layer(tuple(map(tuple, l.edges)), l.m, l.o) for l in spec.layers]
    return LayeredFunction(layers, spec.n)


def build(inst: InstanceFile) -> tuple[Matroid, SubmodularFunction]:
    m = build_matroid(inst.matroid, inst.ground_size)
    f = build_objective(inst.objective)
    if m.ground_size != inst.ground_size or f.ground_size != inst.ground_size:
        raise InstanceError(
            f"ground sizes disagree: file {inst.ground_size}, matroid {m.ground_size}, objective {f.ground_size}"
        )
    return m, f


def parse_instance(text: str) -> InstanceFile:
    try:
        inst = InstanceFile.model_validate_json(text)
    except ValidationError as exc:
        raise InstanceError(str(exc)) from None
    build(inst)  # surfaces size mismatches and invalid structures early
    return inst


def load_instance(path: str | Path) -> InstanceFile:
    return parse_instance(Path(path).read_text())


def save_instance(inst: InstanceFile, path: str | Path) -> None:
    Path(path).write_text(inst.to_json() + "\n")

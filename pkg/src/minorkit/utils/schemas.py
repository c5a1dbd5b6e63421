# src/minorkit/utils/schemas.py

"""pydantic models for every JSON document minorkit reads or writes."""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class GraphDocument(BaseModel):
    n: int = Field(ge=0)
    edges: List[Tuple[int, int]] = []


class WitnessDocument(BaseModel):
    target: GraphDocument
    branch_sets: List[List[int]]
    fixed: List[int] = []


class BoundaryDocument(BaseModel):
    """A boundaried graph: ``boundary[i]`` is the vertex labelled ``i + 1``."""

    graph6: str
    boundary: List[int]


class RepresentativeTable(BaseModel):
    t: int
    h: int
    size_bound: int
    context_bound: int
    representatives: List[BoundaryDocument]


class ObstructionManifest(BaseModel):
    family: List[str]
    k: int
    n_max: int
    complete_up_to: int
    partial: bool
    counts: Dict[int, int]
    candidates: Dict[int, int]
    resource_limited: List[str] = []
    wall_clock: float
    workers: int = 1


class CellDocument(BaseModel):
    id: int
    nodes: List[int] = Field(max_length=3)


class PaintingDocument(BaseModel):
    nodes: List[int]
    cells: List[CellDocument]
    boundary: List[int]
    rotation: Optional[Dict[str, List[str]]] = None


class FlapDocument(BaseModel):
    vertices: List[int]
    edges: List[Tuple[int, int]]


class CertificateDocument(BaseModel):
    X: List[int]
    Y: List[int]
    pegs: List[int]
    corners: List[int]
    omega: List[int]
    painting: PaintingDocument
    sigma: Dict[int, FlapDocument]
    pi: Dict[int, int]


class WallDocument(BaseModel):
    """Branch vertices as ``(vertex, x, y)`` and one host path per elementary edge."""

    height: int = Field(ge=3)
    coords: List[Tuple[int, int, int]]
    paths: List[List[int]]


class FlatnessDocument(BaseModel):
    """A graph, a wall in it and a certificate that the wall is flat."""

    graph: GraphDocument
    wall: WallDocument
    certificate: CertificateDocument


class BoundOutput(BaseModel):
    name: str
    value: str
    bits: int
    params: Dict[str, int]
    constants: Dict[str, int]
    trace: List[Dict[str, str]] = []


class RunManifest(BaseModel):
    command: List[str]
    seed: Optional[int] = None
    budgets: Dict[str, object]
    constants: Dict[str, int] = {}
    wall_clock: float
    complete: bool = True
    workers: int = 1
    version: str

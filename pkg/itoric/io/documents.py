"""
json documents read and written by the cli, one pydantic model per kind;
unknown fields are rejected
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from itoric.errors import PreconditionError
from itoric.geometry.cone import Cone, Face
from itoric.geometry.config import PointConfiguration
from itoric.geometry.fan import Fan, validate_fan
from itoric.io.codec import VectorLiteral, decode_vector, decode_vectors, encode_vector, encode_vectors
from itoric.io.mixins import ErrorMessageMixin, JsonDocumentMixin
from itoric.secondary.subdivision import Subdivision, validate_subdivision
from itoric.settings import ScalarMode


class Document(BaseModel, JsonDocumentMixin):
    model_config = ConfigDict(extra='forbid')


class ConeDocument(Document):
    """generators of a cone; lineality_basis vectors count in both directions"""
    ambient_dim: Optional[int] = None
    generators: List[VectorLiteral] = Field(default_factory=list)
    lineality_basis: List[VectorLiteral] = Field(default_factory=list)
    facet_normals: Optional[List[VectorLiteral]] = None

    def to_cone(self, mode: Optional[ScalarMode] = None) -> Cone:
        gens = decode_vectors(self.generators, mode)
        for b in decode_vectors(self.lineality_basis, mode):
            gens.extend([b, -b])
        return Cone(gens, self.ambient_dim, mode)

    @classmethod
    def from_cone(cls, c: Cone) -> "ConeDocument":
        return cls(
            ambient_dim=c.ambient_dim,
            generators=encode_vectors(c.extreme_rays),
            lineality_basis=encode_vectors(c.lineality_basis),
            facet_normals=encode_vectors(c.facet_normals),
        )


class ConePairDocument(Document):
    first: ConeDocument
    second: ConeDocument


class FaceEntry(Document):
    dim: int
    functional: VectorLiteral
    cone: ConeDocument

    @classmethod
    def from_face(cls, face: Face) -> "FaceEntry":
        return cls(dim=face.dim, functional=encode_vector(face.functional), cone=ConeDocument.from_cone(face.cone))


class FacesResult(Document):
    cone: ConeDocument
    faces: List[FaceEntry]


class SeparationResult(Document):
    functional: VectorLiteral


class HilbertBasisResult(Document):
    cone: ConeDocument
    elements: List[VectorLiteral]


class BinomialsResult(Document):
    relations: List[List[int]]
    binomials: List[str]


class FanDocument(Document):
    """cones of a fan; reading closes the list under faces and validates it"""
    ambient_dim: int
    cones: List[ConeDocument]
    labels: Optional[List[List[int]]] = None

    def to_fan(self, mode: Optional[ScalarMode] = None) -> Fan:
        cones = [c.to_cone(mode) for c in self.cones]
        return validate_fan(cones, self.ambient_dim, mode)

    @classmethod
    def from_fan(cls, f: Fan) -> "FanDocument":
        return cls(
            ambient_dim=f.ambient_dim,
            cones=[ConeDocument.from_cone(c) for c in f.cones],
            labels=[list(label) for label in f.labels] if f.labels is not None else None,
        )


class FanPairDocument(Document):
    first: FanDocument
    second: FanDocument


class FanCheckReport(Document, ErrorMessageMixin):
    is_valid: bool
    error_message: Optional[str] = None
    pair: Optional[List[int]] = None
    cone_count: int = 0


class CompletenessResult(Document):
    is_complete: bool
    is_compact: bool


class PointsDocument(Document):
    points: List[VectorLiteral]
    affine: Optional[bool] = None

    def to_configuration(self, mode: Optional[ScalarMode] = None) -> PointConfiguration:
        p = PointConfiguration.of(self.points, mode)
        if self.affine is not None and self.affine != p.is_affine:
            raise PreconditionError(f'the document says affine={self.affine} but the points say otherwise')
        return p


class LiftingDocument(PointsDocument):
    lifting: VectorLiteral


class SubdivisionDocument(PointsDocument):
    cells: List[List[int]]

    def to_subdivision(self, mode: Optional[ScalarMode] = None) -> Subdivision:
        return validate_subdivision(self.to_configuration(mode), self.cells)

    @classmethod
    def from_subdivision(cls, s: Subdivision) -> "SubdivisionDocument":
        return cls(points=encode_vectors(s.configuration.points), cells=[list(c) for c in s.cells])


class MomentDocument(PointsDocument):
    target: VectorLiteral

    def target_vector(self, mode: Optional[ScalarMode] = None):
        return decode_vector(self.target, mode)


class SimplexPointDocument(PointsDocument):
    z: VectorLiteral


class ToricPointResult(Document):
    chart: str
    generators: List[VectorLiteral]
    values: List[float]
    orbit: str
    residual: Optional[float] = None


class MomentResult(Document):
    moment: List[float]


class LimitDocument(Document):
    fan: FanDocument
    directions: List[VectorLiteral]


class LimitRow(Document):
    direction: VectorLiteral
    orbit_cone: int
    cone: ConeDocument
    values: List[float]


class LimitTable(Document):
    rows: List[LimitRow]


class RecoveryReport(Document, ErrorMessageMixin):
    is_valid: bool
    error_message: Optional[str] = None
    matches: List[bool]
    class_sizes: Dict[int, int]
    fan: FanDocument


class RegularityResult(Document):
    is_regular: bool
    lifting: Optional[VectorLiteral] = None


class TriangulationsResult(Document):
    count: int
    triangulations: List[List[List[int]]]


class SecondaryPolytopeResult(Document):
    vectors: List[VectorLiteral]
    vertices: List[int]
    regular: List[bool]
    projection_axes: Optional[List[List[float]]] = None


class HausdorffDocument(PointsDocument):
    lifting: VectorLiteral
    offset: Optional[VectorLiteral] = None
    s_values: List[float] = Field(default_factory=lambda: [1.0, 2.0, 4.0, 8.0, 16.0])


class HausdorffResult(Document):
    metric: str = 'euclidean'
    s_values: List[float]
    distances: List[float]
    resolution: float
    decreasing: bool
    settles: bool
    limit_cells: List[List[int]]
    log_omega: List[float]
    psi_chart: int
    psi_values: List[float]
    artifacts: List[str] = Field(default_factory=list)


class GalleryDocument(Document):
    """names of the gallery items to run; all of them when empty"""
    items: List[str] = Field(default_factory=list)

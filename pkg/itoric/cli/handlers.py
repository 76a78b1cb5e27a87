"""
one handler per cli command: decode the document, call the library and wrap
the answer in its result model. jobs.run owns exit codes and numeric context.
"""
import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from itoric.cli.jobs import Job, handler
from itoric.errors import FanValidationError, PreconditionError
from itoric.gallery.items import GalleryReport, run_gallery
from itoric.geometry.cone import separate
from itoric.geometry.fan import is_complete, normal_fan, product_fan, star
from itoric.hausdorff.complexes import convergence_series, psi_correspondence
from itoric.io.codec import decode_vector, encode_vector, encode_vectors, parse_vector_option
from itoric.io.documents import (
    BinomialsResult,
    CompletenessResult,
    ConeDocument,
    ConePairDocument,
    FaceEntry,
    FacesResult,
    FanCheckReport,
    FanDocument,
    FanPairDocument,
    GalleryDocument,
    HausdorffDocument,
    HausdorffResult,
    HilbertBasisResult,
    LiftingDocument,
    LimitDocument,
    LimitRow,
    LimitTable,
    MomentDocument,
    MomentResult,
    PointsDocument,
    RecoveryReport,
    RegularityResult,
    SecondaryPolytopeResult,
    SeparationResult,
    SimplexPointDocument,
    SubdivisionDocument,
    ToricPointResult,
    TriangulationsResult,
)
from itoric.io.writers import write_cloud, write_csv, write_svg
from itoric.lattice.binomials import toric_lattice_binomials
from itoric.lattice.monoid import FaceMonoidWitness, face_monoid_check, hilbert_basis
from itoric.numeric.scalar import as_vector
from itoric.secondary.polytope import all_triangulations, secondary_fan, secondary_polytope
from itoric.secondary.subdivision import is_regular, regular_subdivision
from itoric.settings import BirchSettings, HausdorffSettings
from itoric.toric.birch import birch_solve, moment
from itoric.toric.limits import is_compact, limit_one_parameter, recover_fan
from itoric.toric.points import orbit_of
from itoric.toric.projective import moment_map

logger = logging.getLogger(name=__name__)


def _functional(job: Job):
    raw = job.option('functional')
    return parse_vector_option(raw, job.settings.mode) if raw else None


# cones


@handler('dual', ConeDocument)
def dual_cone(doc: ConeDocument, job: Job) -> ConeDocument:
    return ConeDocument.from_cone(doc.to_cone(job.settings.mode).dual())


@handler('lineality', ConeDocument)
def lineality_space(doc: ConeDocument, job: Job) -> ConeDocument:
    return ConeDocument.from_cone(doc.to_cone(job.settings.mode).lineality())


@handler('faces', ConeDocument)
def cone_faces(doc: ConeDocument, job: Job) -> FacesResult:
    """all faces by dimension, or the single face exposed by --functional"""
    c = doc.to_cone(job.settings.mode)
    m = _functional(job)
    if m is not None:
        faces = [c.face_by_functional(m)]
    else:
        faces = sorted(c.faces(), key=lambda f: (f.dim, f.cone.key))
    return FacesResult(cone=ConeDocument.from_cone(c), faces=[FaceEntry.from_face(f) for f in faces])


@handler('separate', ConePairDocument)
def separate_cones(doc: ConePairDocument, job: Job) -> SeparationResult:
    mode = job.settings.mode
    return SeparationResult(functional=encode_vector(separate(doc.first.to_cone(mode), doc.second.to_cone(mode))))


@handler('hilbert-basis', ConeDocument)
def hilbert(doc: ConeDocument, job: Job) -> Union[HilbertBasisResult, FaceMonoidWitness]:
    """hilbert basis of the dual monoid; with --functional, the face monoid witness instead"""
    c = doc.to_cone(job.settings.mode)
    m = _functional(job)
    if m is not None:
        return face_monoid_check(c, m)
    hb = hilbert_basis(c)
    return HilbertBasisResult(cone=ConeDocument.from_cone(c.dual()), elements=encode_vectors(hb.elements))


@handler('toric-binomials', PointsDocument)
def binomials(doc: PointsDocument, job: Job) -> BinomialsResult:
    found = toric_lattice_binomials(doc.to_configuration(job.settings.mode))
    return BinomialsResult(relations=[list(b.exponent) for b in found], binomials=[str(b) for b in found])


# fans


@handler('normal-fan', PointsDocument)
def normal(doc: PointsDocument, job: Job) -> FanDocument:
    return FanDocument.from_fan(normal_fan(doc.to_configuration(job.settings.mode)))


@handler('check-fan', FanDocument)
def check_fan(doc: FanDocument, job: Job) -> FanCheckReport:
    try:
        f = doc.to_fan(job.settings.mode)
    except FanValidationError as e:
        logger.info(f'not a fan: {e.message}')
        return FanCheckReport(is_valid=False, error_message=e.message, pair=list(e.pair) if e.pair else None)
    return FanCheckReport(is_valid=True, cone_count=len(f))


@handler('product-fan', FanPairDocument)
def product(doc: FanPairDocument, job: Job) -> FanDocument:
    mode = job.settings.mode
    return FanDocument.from_fan(product_fan(doc.first.to_fan(mode), doc.second.to_fan(mode)))


@handler('star', FanDocument)
def star_fan(doc: FanDocument, job: Job) -> FanDocument:
    """star of the cone at index --cone of the face-closed fan, as check-fan orders it"""
    f = doc.to_fan(job.settings.mode)
    index = int(job.option('cone', 0))
    if not 0 <= index < len(f):
        raise PreconditionError(f'cone index {index} out of range for a fan of {len(f)} cones')
    return FanDocument.from_fan(star(f, index))


@handler('is-complete', FanDocument)
def completeness(doc: FanDocument, job: Job) -> CompletenessResult:
    f = doc.to_fan(job.settings.mode)
    return CompletenessResult(is_complete=is_complete(f), is_compact=is_compact(f))


# toric points


@handler('birch-solve', MomentDocument)
def birch(doc: MomentDocument, job: Job) -> ToricPointResult:
    p = doc.to_configuration(job.settings.mode)
    b = doc.target_vector(job.settings.mode)
    x = birch_solve(p, b, BirchSettings(**job.settings.model_dump()))
    residual = float(np.abs(moment(x) - b.to_numpy()).max(initial=0.0))
    return ToricPointResult(
        chart='configuration',
        generators=encode_vectors(p.points),
        values=list(x.values),
        orbit=str(orbit_of(x)),
        residual=residual)


@handler('moment-map', SimplexPointDocument)
def moment_image(doc: SimplexPointDocument, job: Job) -> MomentResult:
    p = doc.to_configuration(job.settings.mode)
    z = decode_vector(doc.z, job.settings.mode)
    return MomentResult(moment=[float(c) for c in moment_map(p, z)])


@handler('limit-ops', LimitDocument)
def limits(doc: LimitDocument, job: Job) -> LimitTable:
    """lim gamma_{sv} . x_dense for every direction, with the orbit cone it lands in"""
    mode = job.settings.mode
    f = doc.fan.to_fan(mode)
    rows = []
    for raw in doc.directions:
        v = as_vector(raw, mode)
        x = limit_one_parameter(f, v)
        index = orbit_of(x).cone_index
        rows.append(LimitRow(
            direction=encode_vector(v),
            orbit_cone=index,
            cone=ConeDocument.from_cone(f.cones[index]),
            values=list(x.values)))
    return LimitTable(rows=rows)


@handler('recover-fan', FanDocument)
def recover(doc: FanDocument, job: Job) -> RecoveryReport:
    f = doc.to_fan(job.settings.mode)
    r = recover_fan(f, job.settings.samples)
    return RecoveryReport(
        is_valid=r.is_valid,
        error_message=None if r.is_valid else 'recovered cones differ from the input fan',
        matches=list(r.matches),
        class_sizes=r.class_sizes,
        fan=FanDocument.from_fan(r.fan))


# secondary geometry


@handler('regular-subdivision', LiftingDocument)
def regular(doc: LiftingDocument, job: Job) -> SubdivisionDocument:
    mode = job.settings.mode
    return SubdivisionDocument.from_subdivision(
        regular_subdivision(doc.to_configuration(mode), as_vector(doc.lifting, mode)))


@handler('is-regular', SubdivisionDocument)
def regularity(doc: SubdivisionDocument, job: Job) -> RegularityResult:
    witness = is_regular(doc.to_subdivision(job.settings.mode))
    if witness is None:
        return RegularityResult(is_regular=False)
    return RegularityResult(is_regular=True, lifting=encode_vector(witness))


@handler('triangulations', PointsDocument)
def triangulations(doc: PointsDocument, job: Job) -> TriangulationsResult:
    found = all_triangulations(doc.to_configuration(job.settings.mode), job.settings.max_points)
    return TriangulationsResult(count=len(found), triangulations=[[list(c) for c in t.cells] for t in found])


@handler('secondary-polytope', PointsDocument)
def secondary(doc: PointsDocument, job: Job) -> SecondaryPolytopeResult:
    """characteristic vectors of every triangulation; --csv and --svg write the vertices"""
    polytope = secondary_polytope(doc.to_configuration(job.settings.mode), job.settings.max_points)
    vertices = np.array([v.to_numpy() for v in polytope.vertex_vectors()], dtype=float)
    if job.option('csv'):
        header = [f'phi{i}' for i in range(len(doc.points))]
        write_csv(job.option('csv'), header, encode_vectors(polytope.vertex_vectors()))
    axes: Optional[List[List[float]]] = None
    if job.option('svg'):
        axes = write_svg(job.option('svg'), vertices, title='secondary polytope')
    return SecondaryPolytopeResult(
        vectors=encode_vectors(polytope.vectors),
        vertices=list(polytope.vertices),
        regular=list(polytope.regular),
        projection_axes=axes)


@handler('secondary-fan', PointsDocument)
def secondary_fan_of(doc: PointsDocument, job: Job) -> FanDocument:
    return FanDocument.from_fan(secondary_fan(doc.to_configuration(job.settings.mode), job.settings.max_points))


# hausdorff limits


@handler('hausdorff-limit', HausdorffDocument)
def hausdorff(doc: HausdorffDocument, job: Job) -> HausdorffResult:
    """
    distances from gamma_{s lifting + offset} . Z_A to its limit complex; with
    --animate the clouds of every s and of the limit land in --frames as csv
    """
    mode = job.settings.mode
    p = doc.to_configuration(mode)
    settings = HausdorffSettings(**job.settings.model_dump())
    animate = job.option('animate')
    s_values = animate or doc.s_values
    lifting = as_vector(doc.lifting, mode)
    offset = as_vector(doc.offset, mode) if doc.offset is not None else None
    series = convergence_series(
        p, lifting, s_values, offset,
        density=settings.density,
        settings=settings)
    psi = psi_correspondence(series.limit)
    artifacts = []
    if animate:
        frames = Path(job.option('frames') or 'frames')
        labels = [f'a{i}' for i in range(len(p))]
        for s, cloud in zip(series.s_values, series.clouds):
            artifacts.append(str(write_cloud(frames / f's_{s:g}.csv', cloud, labels)))
        artifacts.append(str(write_cloud(frames / 'limit.csv', series.target, labels)))
    return HausdorffResult(
        s_values=list(series.s_values),
        distances=list(series.distances),
        resolution=series.resolution,
        decreasing=series.is_decreasing,
        settles=series.settles,
        limit_cells=[list(c) for c in series.limit.subdivision.cells],
        log_omega=list(series.limit.log_omega),
        psi_chart=psi.chart.index,
        psi_values=list(psi.values),
        artifacts=artifacts)


# gallery


@handler('paper-gallery', GalleryDocument)
def gallery(doc: GalleryDocument, job: Job) -> GalleryReport:
    regenerate = job.option('regenerate')
    return run_gallery(doc.items, Path(regenerate) if regenerate else None)

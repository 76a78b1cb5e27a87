"""
the worked examples, recomputed and compared against the committed goldens

every item returns plain json data: exact scalars as "p/q" strings, vectors
sorted by their numeric coordinates so that the comparison is bit-exact
"""
import json
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field
from scipy.stats import qmc

from itoric.errors import ItoricError
from itoric.geometry.cone import Cone
from itoric.geometry.config import PointConfiguration
from itoric.geometry.fan import Fan, is_complete, normal_fan
from itoric.gallery.fans import hirzebruch, sigma1, sigma2, sigma3
from itoric.hausdorff.complexes import PowerSumPath, min_face_of_boundedness
from itoric.io.mixins import ErrorMessageMixin, JsonDocumentMixin
from itoric.lattice.binomials import LatticeBinomial, toric_lattice_binomials
from itoric.lattice.monoid import hilbert_basis
from itoric.numeric.scalar import Vector, number_str, use_numeric
from itoric.secondary.polytope import secondary_cone, secondary_polytope
from itoric.secondary.subdivision import Subdivision, is_regular, regular_subdivision
from itoric.settings import ScalarMode
from itoric.toric.limits import limit_one_parameter, projective_limit, recover_fan
from itoric.toric.points import TorusElement, affine_point, membership_residual, orbit_of

logger = logging.getLogger(name=__name__)

GOLDENS = Path(__file__).with_name('goldens.json')
EXACT = ScalarMode.EXACT

ITEMS: Dict[str, Callable[[], Any]] = {}


def item(name: str):
    def register(fn: Callable[[], Any]) -> Callable[[], Any]:
        ITEMS[name] = fn
        return fn
    return register


class GalleryItemResult(BaseModel, ErrorMessageMixin, JsonDocumentMixin):
    name: str
    is_valid: bool
    error_message: Optional[str] = None
    value: Any = None
    expected: Any = None


class GalleryReport(BaseModel, ErrorMessageMixin, JsonDocumentMixin):
    is_valid: bool
    error_message: Optional[str] = None
    items: List[GalleryItemResult] = Field(default_factory=list)
    regenerated: Optional[str] = None


def _strs(v: Vector) -> List[str]:
    return [number_str(x) for x in v]


def _vectors(vs: Sequence[Vector]) -> List[List[str]]:
    return [_strs(v) for v in sorted(vs, key=lambda v: v.sort_key())]


def _all_rays(c: Cone) -> List[List[str]]:
    """extreme rays and both signs of the lineality basis"""
    lineality = list(c.lineality_basis)
    return _vectors(list(c.extreme_rays) + lineality + [-b for b in lineality])


def _maximal_cones(f: Fan) -> List[List[List[str]]]:
    cones = [f.cones[i] for i in f.maximal()]
    out = [_all_rays(c) for c in cones]
    return sorted(out, key=lambda rays: [tuple(Fraction(x) for x in r) for r in rays])


def _same_maximal(f: Fan, g: Fan) -> bool:
    return {f.cones[i] for i in f.maximal()} == {g.cones[i] for i in g.maximal()}


def _cone(gens) -> Cone:
    return Cone(gens, mode=EXACT)


def _config(points) -> PointConfiguration:
    return PointConfiguration.of(points, EXACT)


@item('dual_sigma1')
def dual_sigma1():
    return _all_rays(_cone([[1, 0]]).dual())


@item('dual_sigma2')
def dual_sigma2():
    return _all_rays(_cone([[1, 0], [0, 1]]).dual())


@item('dual_sigma3')
def dual_sigma3():
    return _all_rays(_cone([[2, -1], [0, 1]]).dual())


@item('faces_sigma3')
def faces_sigma3():
    faces = [_all_rays(f.cone) for f in _cone([[2, -1], [0, 1]]).faces()]
    return sorted(faces, key=lambda rays: (len(rays), [tuple(Fraction(x) for x in r) for r in rays]))


@item('exposed_faces_sigma3')
def exposed_faces_sigma3():
    sigma = _cone([[2, -1], [0, 1]])
    return {
        'e1': _all_rays(sigma.face_by_functional([1, 0]).cone),
        'e1+2e2': _all_rays(sigma.face_by_functional([1, 2]).cone),
    }


@item('hilbert_bases')
def hilbert_bases():
    cones = {
        'sigma1': _cone([[1, 0]]),
        'sigma2': _cone([[1, 0], [0, 1]]),
        'sigma3': _cone([[2, -1], [0, 1]]),
    }
    return {name: _vectors(hilbert_basis(c).elements) for name, c in cones.items()}


def _canonical(b: LatticeBinomial) -> LatticeBinomial:
    # a relation and its negative give the same binomial up to sign
    w = list(b.exponent)
    lead = next((a for a in w if a), 0)
    return LatticeBinomial.from_relation([-a for a in w]) if lead < 0 else b


@item('toric_binomials')
def toric_binomials():
    configurations = {
        'line_in_plane': [[0, 1], [1, 1], [1, 2]],
        'quadric_cone': [[1, 0], [1, 1], [1, 2]],
        'cusp': [[2], [3]],
    }
    out = {}
    for name, points in configurations.items():
        binomials = sorted((_canonical(b) for b in toric_lattice_binomials(_config(points))), key=str)
        out[name] = {
            'relations': [list(b.exponent) for b in binomials],
            'binomials': [str(b) for b in binomials],
        }
    return out


@item('cusp_membership')
def cusp_membership():
    p = _config([[2], [3]])
    return [str(membership_residual(p, z)) for z in ([4, 8], [1, 2])]


@item('normal_fans')
def normal_fans():
    simplex = normal_fan(_config([[0, 0], [1, 0], [0, 1]]))
    square = normal_fan(_config([[0, 0], [1, 0], [0, 1], [1, 1]]))
    return {
        'simplex': _maximal_cones(simplex),
        'simplex_is_sigma2': _same_maximal(simplex, sigma2(EXACT)),
        'square': _maximal_cones(square),
        'square_is_sigma3': _same_maximal(square, sigma3(EXACT)),
    }


@item('completeness')
def completeness():
    return {'sigma1': is_complete(sigma1(EXACT)), 'sigma2': is_complete(sigma2(EXACT))}


@item('limit_table')
def limit_table():
    """the seven orbit classes of the projective plane, one direction each"""
    f = sigma2(EXACT)
    p = _config([[0, 0], [1, 0], [0, 1]])
    rows = []
    for direction in ([0, 0], [1, 0], [0, 1], [-1, -1], [1, 1], [-1, 1], [1, -1]):
        orbit = orbit_of(limit_one_parameter(f, direction))
        rows.append({
            'direction': direction,
            'orbit_cone': _all_rays(f.cones[orbit.cone_index]),
            'projective_limit': [int(x) for x in projective_limit(p, direction)],
        })
    return rows


@item('orbit_counts')
def orbit_counts():
    fans = {'sigma2': sigma2(EXACT), 'sigma3': sigma3(EXACT), 'hirzebruch2': hirzebruch(2, EXACT)}
    return {name: len(recover_fan(f, samples=256).class_sizes) for name, f in fans.items()}


@item('irrational_chart')
def irrational_chart():
    """phi(c) = phi(a) phi(b)^(1 + sqrt 2) on dense-orbit points of the irrational cone"""
    root = math.sqrt(2)
    p = PointConfiguration.of([[-root, 1], [1, 0], [1, 1]], ScalarMode.FLOAT)
    grid = qmc.Halton(d=2, scramble=False).random(51)[1:] * 4 - 2
    worst = 0.0
    for row in grid:
        a, b, c = affine_point(p, TorusElement.of(row.tolist(), ScalarMode.FLOAT)).values
        worst = max(worst, abs(c - a * b ** (1 + root)) / c)
    return worst <= 1e-10


@item('secondary_line')
def secondary_line():
    return _vectors(secondary_polytope(_config([[0], [1], [2]])).vertex_vectors())


@item('secondary_square')
def secondary_square():
    polytope = secondary_polytope(_config([[0, 0], [1, 0], [0, 1], [1, 1]]))
    return {'count': len(polytope.triangulations), 'vertices': _vectors(polytope.vertex_vectors())}


@item('secondary_cone_line')
def secondary_cone_line():
    p = _config([[0], [1], [2]])
    return _vectors(secondary_cone(p, Subdivision.of(p, [[0, 1], [1, 2]])).facet_normals)


@item('min_face_paths')
def min_face_paths():
    sigma = _cone([[-1, -1], [0, -1]])
    paths = {
        'v': PowerSumPath.of([(1, [-1, -1]), (0, [0, -1]), (-1, [1, 0])], EXACT),
        'u': PowerSumPath.of([(1, [-1, -1]), (Fraction(1, 2), [1, 0])], EXACT),
        'constant': PowerSumPath.of([(0, [0, -1])], EXACT),
    }
    return {name: _all_rays(min_face_of_boundedness(sigma, path).cone) for name, path in paths.items()}


CONCENTRIC = [[2, 4], [0, 0], [4, 0], [2, 2], ['3/2', 1], ['5/2', 1]]
CONCENTRIC_TWISTED = [[0, 1, 4], [0, 3, 4], [1, 2, 5], [1, 4, 5], [0, 2, 3], [2, 3, 5], [3, 4, 5]]


@item('concentric_regularity')
def concentric_regularity():
    p = _config(CONCENTRIC)
    s1 = regular_subdivision(p, [3, 2, 1, 0, 0, 0])
    witness = is_regular(s1)
    s2 = Subdivision.of(p, CONCENTRIC_TWISTED)
    return {
        's1_cells': [list(c) for c in s1.cells],
        's1_witness_reproduces': witness is not None and regular_subdivision(p, witness).cells == s1.cells,
        's2_regular': is_regular(s2) is not None,
    }


def load_goldens(path: Optional[Path] = None) -> Dict[str, Any]:
    return json.loads(Path(path or GOLDENS).read_text())


def run_item(name: str, goldens: Dict[str, Any]) -> GalleryItemResult:
    expected = goldens.get(name)
    try:
        value = json.loads(json.dumps(ITEMS[name]()))
    except ItoricError as e:
        return GalleryItemResult(name=name, is_valid=False, error_message=e.message, expected=expected)
    if name not in goldens:
        return GalleryItemResult(name=name, is_valid=False, error_message='no golden', value=value)
    ok = value == expected
    if not ok:
        logger.warning(f'gallery item {name} differs from its golden')
    return GalleryItemResult(
        name=name,
        is_valid=ok,
        error_message=None if ok else 'value differs from the golden',
        value=value,
        expected=expected)


def run_gallery(names: Sequence[str] = (), regenerate: Optional[Path] = None) -> GalleryReport:
    """diff every requested item against the goldens, or write fresh goldens to ``regenerate``"""
    names = list(names) or list(ITEMS)
    unknown = [n for n in names if n not in ITEMS]
    if unknown:
        return GalleryReport(is_valid=False, error_message=f'unknown gallery items: {", ".join(unknown)}')
    with use_numeric(EXACT):
        if regenerate is not None:
            fresh = {name: json.loads(json.dumps(ITEMS[name]())) for name in names}
            path = Path(regenerate)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(fresh, indent=2) + '\n')
            logger.info(f'wrote {len(fresh)} goldens to {path}')
            return GalleryReport(is_valid=True, regenerated=str(path))
        goldens = load_goldens()
        results = [run_item(name, goldens) for name in names]
    failed = [r.name for r in results if not r.is_valid]
    logger.info(f'gallery: {len(results) - len(failed)} of {len(results)} items match')
    return GalleryReport(
        is_valid=not failed,
        error_message=f'mismatched items: {", ".join(failed)}' if failed else None,
        items=results)

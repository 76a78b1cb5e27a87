import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from itoric.errors import FanValidationError, ModeMismatchError, PreconditionError
from itoric.io import documents
from itoric.io.codec import decode_vector, encode_scalar, encode_vector, parse_vector_option
from itoric.io.documents import ConeDocument, FanCheckReport, FanDocument, MomentDocument, PointsDocument
from itoric.io.writers import pca_projection, write_cloud, write_csv, write_svg
from itoric.numeric.scalar import Vector
from itoric.settings import ScalarMode

EXACT = ScalarMode.EXACT
FLOAT = ScalarMode.FLOAT
SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def test_scalar_codec():
    assert encode_scalar(Fraction(-1, 2)) == "-1/2"
    assert encode_scalar(Fraction(3)) == "3"
    assert encode_scalar(0.25) == 0.25
    assert encode_vector(Vector.of(["1/3", 2], EXACT)) == ["1/3", "2"]
    assert decode_vector(["1/3", 2, "0.5"], EXACT) == Vector.of([Fraction(1, 3), 2, Fraction(1, 2)], EXACT)
    assert decode_vector(["1/4", 1], FLOAT).coords == (0.25, 1.0)


def test_vector_options():
    assert parse_vector_option("1, -1/2,0", EXACT) == Vector.of([1, Fraction(-1, 2), 0], EXACT)
    with pytest.raises(ModeMismatchError):
        parse_vector_option("1,x", EXACT)


def test_cone_documents(sigma3_cone):
    doc = ConeDocument.from_cone(sigma3_cone)
    assert doc.generators == [["0", "1"], ["2", "-1"]]
    assert doc.facet_normals == [["1", "0"], ["1", "2"]]
    assert ConeDocument.model_from_text(doc.model_dump_text()).to_cone(EXACT) == sigma3_cone
    line = ConeDocument(ambient_dim=2, lineality_basis=[[1, 1]]).to_cone(EXACT)
    assert line.lineality_basis == [Vector.of([1, 1], EXACT)]


def test_documents_reject_unknown_fields_and_bad_literals():
    with pytest.raises(ValidationError):
        ConeDocument.model_validate({"generators": [[1, 0]], "rays": []})
    with pytest.raises(ValidationError):
        ConeDocument.model_validate({"generators": [["one", 0]]})
    with pytest.raises(ValidationError):
        MomentDocument.model_validate({"points": [[1, 0]]})


def test_fan_documents(sigma2_fan):
    doc = FanDocument.from_fan(sigma2_fan)
    assert len(doc.cones) == 7
    assert set(doc.to_fan(EXACT).cones) == set(sigma2_fan.cones)
    crossing = FanDocument(
        ambient_dim=2,
        cones=[ConeDocument(generators=[[1, 0], [0, 1]]), ConeDocument(generators=[[1, 1], [-1, 1]])])
    with pytest.raises(FanValidationError):
        crossing.to_fan(EXACT)


def test_documents_drop_unset_optionals():
    report = FanCheckReport(is_valid=True, cone_count=3)
    assert report.model_dump_document() == {"is_valid": True, "cone_count": 3}
    assert json.loads(report.model_dump_text()) == report.model_dump_document()


@pytest.mark.parametrize("path", sorted(SCHEMAS.glob("*.json")), ids=lambda p: p.stem)
def test_schemas_match_the_document_models(path):
    schema = json.loads(path.read_text())
    model = getattr(documents, schema["title"])
    root = schema
    if "$ref" in schema:
        root = schema["$defs"][schema["$ref"].rsplit("/", 1)[-1]]
    assert set(root["properties"]) == set(model.model_fields)
    assert root["additionalProperties"] is False


def test_csv_writers(tmp_path):
    path = write_csv(tmp_path / "out" / "table.csv", ["a", "b"], [[1, 0.5], [2, 0.25]])
    assert path.read_text().splitlines() == ["a,b", "1,0.5", "2,0.25"]
    cloud = write_cloud(tmp_path / "cloud.csv", np.array([[0.5, 0.5]]))
    assert cloud.read_text().splitlines()[0] == "a0,a1"


def test_svg_writer(tmp_path):
    points = np.array([[1.0, 2.0, 1.0], [2.0, 0.0, 2.0], [0.0, 1.0, 0.0], [1.0, 1.0, 1.0]])
    axes = write_svg(tmp_path / "polytope.svg", points, title="secondary polytope")
    assert len(axes) == 2
    assert (tmp_path / "polytope.svg").read_text().lstrip().startswith("<?xml")
    with pytest.raises(PreconditionError):
        write_svg(tmp_path / "empty.svg", np.zeros((0, 2)))


def test_pca_projection_keeps_planar_points():
    points = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    coords, axes = pca_projection(points)
    assert coords.shape == (3, 2)
    assert np.allclose(coords - coords[0], points - points[0])


def test_affine_flag_must_match_the_points():
    lifted = PointsDocument(points=[[1, 0], [1, 1], [1, 2]], affine=True)
    assert lifted.to_configuration(EXACT).height_functional() == Vector.of([1, 0], EXACT)
    assert PointsDocument(points=[[0], [1], [2]]).to_configuration(EXACT).is_affine is False
    with pytest.raises(PreconditionError):
        PointsDocument(points=[[0], [1], [2]], affine=True).to_configuration(EXACT)
    with pytest.raises(PreconditionError):
        PointsDocument(points=[[1, 0], [1, 1]], affine=False).to_configuration(EXACT)

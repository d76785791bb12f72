import hashlib
import json
import logging
from importlib import resources

import pytest

from neutrorec.ingestion import (
    BUILTIN_DATASETS,
    DatasetSchema,
    IngestionError,
    SchemaError,
    builtin_example3,
    builtin_example4,
    load_builtin_dataset,
    load_dataset,
    load_membership_config,
    load_schema,
    membership_from_dict,
    percentile_labels,
    percentile_membership,
)
from neutrorec.membership import ConfigurationError, neutrosophicate, trapezoid

SCHEMA = DatasetSchema.from_dict({
    "name": "toy",
    "features": [{"name": "age", "range": [0, 120]}],
    "symptoms": ["bp"],
    "target": "y",
    "expected_records": 3,
})


def write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestSchemas:
    @pytest.mark.parametrize("name", BUILTIN_DATASETS)
    def test_builtin_schemas_load(self, name):
        s = load_schema(name)
        assert s.name.lower() == name and s.features and s.symptoms

    def test_missing_field(self):
        with pytest.raises(SchemaError, match="target"):
            DatasetSchema.from_dict({"name": "x", "features": ["a"], "symptoms": ["b"], "expected_records": 1})

    def test_target_cannot_be_attribute(self):
        with pytest.raises(SchemaError):
            DatasetSchema.from_dict({"name": "x", "features": ["a"], "symptoms": ["b"], "target": "a",
                                     "expected_records": 1})

    def test_needs_feature_and_symptom(self):
        with pytest.raises(SchemaError):
            DatasetSchema.from_dict({"name": "x", "features": [], "symptoms": ["b"], "target": "t",
                                     "expected_records": 1})

    def test_unknown_schema(self, tmp_path):
        with pytest.raises(IngestionError):
            load_schema(tmp_path / "nope.json")

    def test_bad_json(self, tmp_path):
        with pytest.raises(SchemaError):
            load_schema(write(tmp_path, "{", "s.json"))


class TestLoadDataset:
    def test_clean_file(self, tmp_path):
        ds = load_dataset(write(tmp_path, "age,bp,y\n30,120,1\n40,130,3\n50,110,2\n"), SCHEMA)
        assert len(ds) == 3 and ds.dropped == 0
        assert ds.rows[0] == {"age": 30.0, "bp": 120.0}
        assert ds.targets == (0.0, 1.0, 0.5)

    def test_semicolon_and_extra_columns(self, tmp_path):
        ds = load_dataset(write(tmp_path, "id;y;bp;age\n1;0;120;30\n2;1;130;40\n"), SCHEMA)
        assert len(ds) == 2 and ds.columns == ("id", "y", "bp", "age")

    def test_corrupt_rows_dropped_and_counted(self, tmp_path, caplog):
        text = "age,bp,y\n30,120,1\nabc,130,1\n200,100,0\n40,,1\n50,110\n\n60,115,0\n"
        with caplog.at_level(logging.WARNING):
            ds = load_dataset(write(tmp_path, text), SCHEMA)
        assert len(ds) == 2 and ds.dropped == 4
        assert "expects 3" in caplog.text

    def test_missing_column(self, tmp_path):
        with pytest.raises(SchemaError, match="bp"):
            load_dataset(write(tmp_path, "age,y\n30,1\n"), SCHEMA)

    def test_missing_file(self, tmp_path):
        with pytest.raises(IngestionError):
            load_dataset(tmp_path / "none.csv", SCHEMA)

    def test_empty_file(self, tmp_path):
        with pytest.raises(SchemaError):
            load_dataset(write(tmp_path, ""), SCHEMA)

    def test_no_valid_rows(self, tmp_path):
        with pytest.raises(IngestionError):
            load_dataset(write(tmp_path, "age,bp,y\nx,y,z\n"), SCHEMA)

    def test_target_map(self, tmp_path):
        schema = DatasetSchema.from_dict({"name": "t", "features": ["age"], "symptoms": ["bp"], "target": "y",
                                          "expected_records": 2, "target_map": {"yes": 1, "no": 0}})
        ds = load_dataset(write(tmp_path, "age,bp,y\n1,2,yes\n3,4,no\n5,6,maybe\n"), schema)
        assert ds.targets == (1.0, 0.0) and ds.dropped == 1


class TestHeart:
    def test_bundled_file(self, caplog):
        with caplog.at_level(logging.WARNING):
            ds = load_builtin_dataset("heart")
        assert len(ds) == 270 and ds.dropped == 0
        assert set(ds.targets) == {0.0, 1.0}
        assert "expects 271" in caplog.text

    def test_checksum_recorded(self):
        data = resources.files("neutrorec") / "data"
        digest = hashlib.sha256((data / "heart.csv").read_bytes()).hexdigest()
        assert digest[:8] in (data / "SOURCES.md").read_text()

    def test_unbundled_dataset(self):
        with pytest.raises(IngestionError, match="no data file"):
            load_builtin_dataset("rhc")


class TestMembershipConfig:
    DOC = {
        "attributes": {"age": {"young": {"a": [0, 0, 20, 40], "b": [0, 0, 20, 40], "c": [0, 0, 20, 40]}}},
        "output": {"low": {"a": [0, 0, 0.2, 0.5], "b": [0, 0, 0.2, 0.5], "c": [0, 0, 0.2, 0.5]}},
    }

    def test_roundtrip(self, tmp_path):
        p = write(tmp_path, json.dumps(self.DOC), "m.json")
        cfg = load_membership_config(p)
        assert cfg.to_dict() == self.DOC
        assert cfg.anchors == (0.1,)

    def test_missing_breakpoints(self):
        doc = {"attributes": {"age": {"young": {"a": [0, 1, 2, 3], "b": [0, 1, 2, 3]}}}}
        with pytest.raises(ConfigurationError, match="age.young"):
            membership_from_dict(doc)

    def test_descending_breakpoints(self):
        doc = {"attributes": {"age": {"young": {"a": [3, 2, 1, 0], "b": [0, 1, 2, 3], "c": [0, 1, 2, 3]}}}}
        with pytest.raises(ConfigurationError):
            membership_from_dict(doc)

    def test_coverage(self):
        with pytest.raises(ConfigurationError, match="bp"):
            membership_from_dict(self.DOC, SCHEMA)

    def test_invalid_json(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_membership_config(write(tmp_path, "nope", "m.json"))


class TestPercentileLabels:
    def test_breakpoints_at_quartiles(self):
        labels = percentile_labels([float(v) for v in range(101)])
        low, mid, high = (lm.params for lm in labels)
        assert low.a == (0, 0, 25, 50) and mid.a == (25, 50, 50, 75) and high.a == (50, 75, 100, 100)
        assert mid.b == (37.5, 50, 50, 62.5) and mid.c == (12.5, 50, 50, 87.5)

    def test_every_value_has_some_truth(self):
        values = [float(v) for v in range(0, 101, 7)]
        labels = percentile_labels(values)
        for v in values:
            assert max(trapezoid(v, lm.params.a) for lm in labels) > 0
            for lm in labels:
                h = neutrosophicate(v, lm.params)
                assert all(0 <= c <= 1 for c in h)

    def test_empty(self):
        with pytest.raises(ConfigurationError):
            percentile_labels([])

    def test_dataset_membership(self):
        cfg = percentile_membership(load_builtin_dataset("heart"))
        assert set(cfg.attributes) == {"age", "chol", "trestbps", "thalach"}
        assert cfg.anchors == (0.125, 0.5, 0.875)


class TestBuiltinExamples:
    def test_example3_shape(self):
        recs = builtin_example3()
        assert [r.name for r in recs] == ["Alex", "Linda", "Bill", "John"]
        for r in recs:
            assert r.x.names == ("old", "middle", "young")
            assert r.y.names == ("cold", "medium", "hot")
            assert len(r.d) == 1 and r.d[0].names == ("L1", "L2", "L3")
        assert recs[0].d[0]["L3"].as_tuple() == (0.7, 0.0, 0.0)

    def test_example4_shape(self):
        a, b = builtin_example4()
        assert a.x.names == b.x.names == ("x1", "x2", "x3")
        assert a.d[0].names == ("x1", "x2", "x3", "y1", "y2", "y3")

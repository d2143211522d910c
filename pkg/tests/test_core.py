"""配置、异常与指标"""

import pytest

from src.core.exceptions import AppError, CapExceeded, ErrorCode, NotEven, ParseError, ValidationError
from src.core.metrics import metrics
from src.core.settings import get_settings, reload_settings


@pytest.fixture
def fresh_settings(monkeypatch):
    yield monkeypatch
    monkeypatch.undo()
    reload_settings()


class TestSettings:
    def test_defaults(self, fresh_settings):
        for key in ("RUN_PROFILE", "RUN_SEED", "BFS_MAX_KEYS", "REPORT_INCLUDE_TIMING"):
            fresh_settings.delenv(key, raising=False)
        settings = reload_settings()
        assert settings.run.profile == "quick"
        assert settings.run.seed == 20240101
        assert settings.run.include_timing is False
        assert settings.matrix.bfs_max_keys == 1 << 26
        assert settings.validate() == []

    def test_environment_overrides(self, fresh_settings):
        fresh_settings.setenv("RUN_PROFILE", " Full ")
        fresh_settings.setenv("RUN_SEED", "7")
        fresh_settings.setenv("REPORT_INCLUDE_TIMING", "yes")
        settings = reload_settings()
        assert settings.run.profile == "full"
        assert settings.run.seed == 7
        assert settings.run.include_timing is True
        assert settings.to_dict()["run"]["profile"] == "full"

    def test_lower_bounds_and_bad_values(self, fresh_settings):
        fresh_settings.setenv("PERM_MAX_DEGREE", "2")
        fresh_settings.setenv("BFS_CHUNK_SIZE", "many")
        settings = reload_settings()
        assert settings.permutation.max_degree == 4
        assert settings.matrix.bfs_chunk_size == 256

    def test_unknown_profile_is_reported(self, fresh_settings):
        fresh_settings.setenv("RUN_PROFILE", "huge")
        errors = reload_settings().validate()
        assert any("run.profile" in e for e in errors)

    def test_cached(self):
        assert get_settings() is get_settings()


class TestExceptions:
    def test_to_dict(self):
        e = CapExceeded("too big", details={"cap": 7})
        assert e.to_dict() == {"error": "CAP_EXCEEDED", "code": ErrorCode.CAP_EXCEEDED.value, "message": "too big", "details": {"cap": 7}}
        assert str(e) == "[CAP_EXCEEDED] too big"

    def test_default_message_and_exit_codes(self):
        assert NotEven().message == "Permutation is odd"
        assert NotEven().exit_code == 1
        assert ParseError("x").exit_code == 2
        assert CapExceeded().exit_code == 3

    def test_hierarchy_and_cause(self):
        cause = ValueError("inner")
        e = ParseError("outer", cause=cause)
        assert isinstance(e, AppError)
        assert e.cause is cause
        assert isinstance(ValidationError("v"), AppError)


class TestMetrics:
    def setup_method(self):
        metrics.reset()

    def teardown_method(self):
        metrics.reset()

    def test_measure_lemma(self):
        with metrics.measure_lemma("uni1"):
            pass
        with pytest.raises(NotEven):
            with metrics.measure_lemma("uni1"):
                raise NotEven()
        counter = metrics.get_metrics()["lemmas"]["uni1"]["counter"]
        assert counter["success"] == 1
        assert counter["failure"] == 1

    def test_tables_and_witnesses(self):
        metrics.record_table_hit("sum-table")
        metrics.record_table_hit("sum-table")
        metrics.record_table_miss("sum-table")
        metrics.record_witness(True)
        data = metrics.get_metrics()
        assert data["tables"]["sum-table"]["hits"] == 2
        assert data["tables"]["sum-table"]["hit_rate"] == 66.67
        assert data["witnesses"]["valid"] == 1

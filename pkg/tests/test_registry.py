"""引理注册表"""

import pytest

from src.cli.sweeps import verify_uni1
from src.common.lemmas import get_lemma, get_lemma_registry, list_lemmas, register_lemma, reload_lemmas, resolve_lemma
from src.common.lemmas.registry import LemmaSpec
from src.core.exceptions import CapExceeded, ConfigurationError, LemmaUnknown

KNOWN = {
    "uni1", "brenner", "uni2", "sl-step", "sl-double", "sp-word", "su3",
    "torus", "saxl", "split", "symmetric", "even-weight", "pair-span", "generic",
}


class TestRegistry:
    def test_lists_all_lemmas(self):
        assert set(list_lemmas()) == KNOWN
        assert list_lemmas() == sorted(list_lemmas())

    def test_singleton(self):
        assert get_lemma_registry() is get_lemma_registry()

    def test_unknown_lemma(self):
        with pytest.raises(LemmaUnknown) as info:
            get_lemma("uni3")
        assert info.value.exit_code == 2
        assert "uni1" in info.value.details["known"]

    def test_resolve(self):
        assert resolve_lemma("uni1", "verify") is verify_uni1

    def test_missing_action(self):
        with pytest.raises(LemmaUnknown):
            resolve_lemma("saxl", "factorize")
        with pytest.raises(LemmaUnknown):
            resolve_lemma("generic", "factorize")

    def test_every_entry_resolves(self):
        for lemma_id in list_lemmas():
            spec = get_lemma(lemma_id)
            assert spec.actions()
            for action in spec.actions():
                assert callable(resolve_lemma(lemma_id, action))

    def test_broken_entry(self):
        try:
            register_lemma("broken", {
                "description": "bad entry",
                "verify": {"module": "src.cli.sweeps", "function": "verify_nothing"},
            })
            with pytest.raises(ConfigurationError):
                resolve_lemma("broken", "verify")
        finally:
            assert reload_lemmas()
        assert "broken" not in list_lemmas()


class TestLemmaSpec:
    def test_caps(self):
        spec = get_lemma("uni1")
        spec.check_caps("quick", {"m": 7})
        with pytest.raises(CapExceeded) as info:
            spec.check_caps("quick", {"m": 8})
        assert info.value.exit_code == 3
        assert info.value.details["cap"] == 7
        spec.check_caps("big", {"m": 9})

    def test_limits_exclude_parameters(self):
        assert get_lemma("uni1").limits("quick") == {"samples": 200, "exhaustive_order": 360}
        assert get_lemma("uni1").limits("full") == {}

    def test_to_dict(self):
        data = get_lemma("saxl").to_dict()
        assert data["id"] == "saxl"
        assert data["actions"] == ["verify"]
        assert data["parameters"] == ["q", "n", "bound"]

    def test_from_dict_defaults(self):
        spec = LemmaSpec.from_dict("x", {"description": "  text  ", "defaults": {"m": 3}})
        assert spec.description == "text"
        assert spec.defaults == {"m": "3"}
        assert spec.actions() == []
        assert spec.target == "none"

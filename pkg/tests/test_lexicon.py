import json

import pytest
from hypothesis import given, strategies as st

from iegraph.errors import DuplicateAlias, EmptyTerm, FormatError, UnknownCanonical
from iegraph.lexicon import load_aliases, load_glossary, load_lexicon, normalize_term

from conftest import data_path


# Hand-normalized oracle list.
NORMALIZATION_FIXTURE = [
    ("Smart  Contracts", "smart contracts"),
    ("blockchain", "blockchain"),
    ("“dApps”", "dapps"),
    ("  Proof-of-Stake ", "proof-of-stake"),
    ("TOKEN", "token"),
    ("'oracle'", "oracle"),
    ("(layer   2)", "layer 2"),
    ("Fees.", "fees"),
    ("..--..", ""),
    ("Ständige Älteste", "ständige älteste"),
    ("cross-chain bridge", "cross-chain bridge"),
    ("A\tB", "a b"),
    ("état:", "état"),
    ("x", "x"),
    ("Gas!", "gas"),
    ("¿consenso?", "consenso"),
    ("UTXO set", "utxo set"),
    ("NFT’s", "nft’s"),
    ("deFi", "defi"),
    ("wrapped    ether", "wrapped ether"),
]


@pytest.mark.parametrize("raw,expected", NORMALIZATION_FIXTURE)
def test_normalize_term_fixture(raw, expected):
    assert normalize_term(raw) == expected


@given(st.text(max_size=40))
def test_normalize_idempotent(raw):
    once = normalize_term(raw)
    assert normalize_term(once) == once


class TestLoadGlossary:
    def test_basic(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text('["Smart-Contract","blockchain"]', encoding="utf-8")
        assert load_glossary(str(path)) == ("smart-contract", "blockchain")

    def test_empty_rejected(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text("[]", encoding="utf-8")
        with pytest.raises(FormatError):
            load_glossary(str(path))

    def test_duplicates_merged(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text('["Token","token","gas"]', encoding="utf-8")
        assert load_glossary(str(path)) == ("token", "gas")

    def test_not_an_array(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text('{"a":1}', encoding="utf-8")
        with pytest.raises(FormatError):
            load_glossary(str(path))

    def test_shipped_glossary_has_47_terms(self):
        assert len(load_glossary(data_path("glossary.json"))) == 47


class TestLoadAliases:
    GLOSSARY = ("smart-contract", "blockchain", "a", "b")

    def _write(self, tmp_path, payload):
        path = tmp_path / "aliases.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    def test_valid_map(self, tmp_path):
        path = self._write(tmp_path, {"smart-contract": ["smart contract", "smart contracts"]})
        aliases = load_aliases(path, self.GLOSSARY)
        assert aliases == {"smart-contract": ("smart contract", "smart contracts")}

    def test_unknown_canonical(self, tmp_path):
        path = self._write(tmp_path, {"unlisted-term": ["x"]})
        with pytest.raises(UnknownCanonical):
            load_aliases(path, self.GLOSSARY)

    def test_alias_under_two_keys(self, tmp_path):
        path = self._write(tmp_path, {"a": ["z"], "b": ["z"]})
        with pytest.raises(DuplicateAlias):
            load_aliases(path, self.GLOSSARY)

    def test_alias_colliding_with_glossary_term(self, tmp_path):
        path = self._write(tmp_path, {"a": ["blockchain"]})
        with pytest.raises(DuplicateAlias):
            load_aliases(path, self.GLOSSARY)

    def test_shipped_aliases_validate(self):
        lexicon = load_lexicon(data_path("glossary.json"), data_path("aliases.json"))
        assert lexicon.alias_to_canonical["dapps"] == "decentralized application"


class TestCanonicalize:
    def test_alias_resolved(self, lexicon):
        assert lexicon.canonicalize("smart contracts") == "smart-contract"

    def test_aliases_off_passthrough(self, lexicon):
        assert lexicon.canonicalize("smart contracts", use_aliases=False) == "smart contracts"

    def test_dapps_to_decentralized_application(self, lexicon):
        assert lexicon.canonicalize("dApps") == "decentralized application"

    def test_unlisted_term_normalized_only(self, lexicon):
        assert lexicon.canonicalize("Fraud Proofs") == "fraud proofs"

    def test_empty_term_rejected(self, lexicon):
        with pytest.raises(EmptyTerm):
            lexicon.canonicalize("...")

    def test_idempotent_over_vocabulary(self, lexicon):
        surfaces = ["dApps", "Smart Contracts", "made-up term", "Blockchains", "HASH function"]
        for surface in surfaces:
            once = lexicon.canonicalize(surface)
            assert lexicon.canonicalize(once) == once

    def test_never_returns_an_alias(self, lexicon):
        for alias in lexicon.alias_to_canonical:
            result = lexicon.canonicalize(alias)
            assert result not in lexicon.alias_to_canonical
            assert result in lexicon.glossary_set

    def test_empty_lexicon_passthrough(self, empty_lexicon):
        assert empty_lexicon.canonicalize("Some Term") == "some term"


def test_load_lexicon_without_files():
    assert load_lexicon(None).glossary == ()


def test_aliases_without_glossary_rejected():
    with pytest.raises(FormatError):
        load_lexicon(None, data_path("aliases.json"))

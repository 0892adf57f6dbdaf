import pytest

from selpref.corpus import count_frequencies, load_inventory, load_triples
from selpref.data import toy_path
from selpref.prefmodel import PreferenceModel
from selpref.taxonomy import load_taxonomy
from selpref.wsd import Disambiguator


@pytest.fixture(scope="session")
def toy_taxonomy():
    with open(toy_path("taxonomy.tsv"), encoding="utf-8") as fh:
        return load_taxonomy(fh, "taxonomy.tsv")


@pytest.fixture(scope="session")
def toy_inventory(toy_taxonomy):
    with open(toy_path("senses.tsv"), encoding="utf-8") as fh:
        return load_inventory(fh, toy_taxonomy, "senses.tsv")


@pytest.fixture(scope="session")
def toy_triples(toy_inventory):
    with open(toy_path("triples.tsv"), encoding="utf-8") as fh:
        return load_triples(fh, toy_inventory, "triples.tsv")


@pytest.fixture(scope="session")
def toy_tables(toy_triples):
    return count_frequencies(toy_triples)


@pytest.fixture(scope="session")
def toy_model(toy_taxonomy, toy_tables):
    return PreferenceModel.train(toy_taxonomy, toy_tables)


@pytest.fixture(scope="session")
def toy_disambiguator(toy_model, toy_inventory):
    return Disambiguator(toy_model, toy_inventory)

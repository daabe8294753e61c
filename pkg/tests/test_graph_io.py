import json
import random

import networkx as nx
import pytest

from helpers import random_graph, to_nx
from hoffman_limits.errors import ParseError
from hoffman_limits.graph import make_graph, standard_graph
from hoffman_limits.graph_io import graph6_decode, graph6_encode, graph_from_json, graph_to_json, read_graph


def test_known_encodings():
    assert graph6_encode(standard_graph("complete", 4)) == "C~"
    assert graph6_encode(make_graph(1, [])) == "@"
    assert graph6_encode(make_graph(0, [])) == "?"


@pytest.mark.parametrize("n", [0, 1, 2, 5, 8, 13, 62, 63, 64, 70, 130])
def test_encoding_matches_networkx(n):
    G = random_graph(random.Random(n), n, 0.3)
    expect = nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()
    assert graph6_encode(G) == expect


def test_round_trip_small_graphs():
    rng = random.Random(1)
    for _ in range(300):
        G = random_graph(rng, rng.randint(0, 8), rng.random())
        assert graph6_decode(graph6_encode(G)) == G


def test_header_is_accepted():
    assert graph6_decode(">>graph6<<C~") == standard_graph("complete", 4)


@pytest.mark.parametrize(
    "text,offset",
    [
        ("C~~", 2),  # too long
        ("D~", None),  # truncated
        ("C\x7f", 1),  # byte out of range
        ("", 0),
    ],
)
def test_decode_errors_report_position(text, offset):
    with pytest.raises(ParseError) as err:
        graph6_decode(text)
    if offset is not None:
        assert err.value.offset == offset
        assert f"at byte {offset}" in str(err.value)


def test_nonzero_padding_is_rejected():
    # K2 is "A_"; the last six-bit group of n=2 has five padding bits
    assert graph6_decode("A_") == standard_graph("complete", 2)
    with pytest.raises(ParseError):
        graph6_decode("A`")


def test_json_round_trip_and_autodetect():
    G = standard_graph("petersen")
    doc = graph_to_json(G)
    assert doc["n"] == 10 and len(doc["edges"]) == 15
    assert graph_from_json(json.dumps(doc)) == G
    assert read_graph(json.dumps(doc)) == G
    assert read_graph(graph6_encode(G)) == G

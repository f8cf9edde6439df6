import pytest

from continualdp import (
    Graph,
    GraphSequence,
    RandomSource,
    Update,
    parse_sequence,
    serialize_sequence,
)
from continualdp.errors import FormatError, InvalidUpdate

from conftest import random_sequence


def test_round_trip_500_random_sequences():
    rng = RandomSource(20260824)
    kinds = ("incremental", "decremental", "fully-dynamic")
    for i in range(500):
        seq = random_sequence(rng.child(i), kind=kinds[i % 3])
        assert parse_sequence(serialize_sequence(seq)) == seq


def test_serialized_form_is_stable():
    g = Graph.from_edges([(0, 1, 2)], extra_nodes=[5])
    seq = GraphSequence(
        g,
        [
            Update(v_ins={7}, e_ins={(5, 7): 3}),
            Update(v_del={7}, e_del={(5, 7)}),
        ],
    )
    assert serialize_sequence(seq) == (
        "t=0 +v:0,1,5 +e:0-1:2\n"
        "t=1 +v:7 +e:5-7:3\n"
        "t=2 -v:7 -e:5-7\n"
    )


def test_empty_initial_graph_still_emits_t0():
    seq = GraphSequence(Graph(), [])
    assert serialize_sequence(seq) == "t=0\n"
    assert parse_sequence("t=0\n") == seq


def test_comments_and_blank_lines_ignored():
    text = "# a comment\n\nt=0 +v:0,1\n# another\nt=1 +e:0-1:4\n"
    seq = parse_sequence(text)
    assert seq.T == 1
    assert seq.materialize()[0].edges == {(0, 1): 4}


@pytest.mark.parametrize(
    "text",
    [
        "t=1 +v:0\n",  # missing t=0
        "t=0 +v:0\nt=0 +v:1\n",  # duplicate time index
        "t=0 +v:0,1\nt=2 +e:0-1:1\n",  # non-contiguous
        "t=0 -v:3\n",  # deletions in the initial line
        "t=-1 +v:0\n",  # negative time
        "x=0\n",  # missing t= prefix
        "t=0 +v:a\n",  # bad node id
        "t=0 +v:0,1\nt=1 +e:0-1\n",  # edge insert without weight
        "t=0 +v:0,1\nt=1 -e:0:1\n",  # malformed edge delete
        "t=0 +v:0,1\nt=1 ?e:0-1\n",  # unknown tag
    ],
)
def test_parse_rejects_malformed_input(text):
    with pytest.raises(FormatError):
        parse_sequence(text)


def test_parse_validates_the_sequence():
    with pytest.raises(InvalidUpdate):
        parse_sequence("t=0 +v:0,1\nt=1 -e:0-1\n")

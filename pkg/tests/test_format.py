import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pneq.errors import NetFormatError
from pneq.fixtures import fixture
from pneq.format import parse_marking, parse_net, parse_relation, relation_document, serialize_net, serialize_relation
from pneq.multiset import EMPTY, Multiset
from pneq.randomnet import make_rng, random_document, random_relation


def test_parse_weighted_transition():
    doc = parse_net("place s1\nplace s2\ntrans t: s1 -a-> 2*s2")
    (t,) = doc.net.transitions
    assert t.name == "t"
    assert t.pre == Multiset([0])
    assert t.post == Multiset({1: 2})
    assert t.label == "a"


def test_empty_preset_is_an_error():
    with pytest.raises(NetFormatError) as err:
        parse_net("trans t: 0 -a-> s1")
    assert "empty pre-set" in str(err.value)
    assert err.value.line == 1


def test_empty_postset_is_allowed():
    doc = parse_net("place s1\ntrans t: s1 -a-> 0")
    assert doc.net.transitions[0].post == EMPTY


def test_errors_carry_line_and_column():
    with pytest.raises(NetFormatError) as err:
        parse_net("place s1\n\ntrans t : s1 -a-> s9\n")
    assert (err.value.line, err.value.column) == (3, 19)
    with pytest.raises(NetFormatError) as err:
        parse_net("place s1\nplace s1\n")
    assert err.value.line == 2
    with pytest.raises(NetFormatError) as err:
        parse_net("place s1\ntrans t: s1 a s1\n")
    assert err.value.line == 2
    with pytest.raises(NetFormatError):
        parse_net("place s1\ntrans t: s1 -a-> s1\ntrans t: s1 -b-> s1\n")
    with pytest.raises(NetFormatError):
        parse_net("place s1 $\n")


def test_comments_and_crlf():
    doc = parse_net("# header\r\nplace s1  # trailing\r\ntrans : s1 -a-> 0\r\n")
    assert doc.net.places == ("s1",)
    assert doc.net.transitions[0].name == "t1"


def test_parse_marking_examples():
    net = parse_net("place s1\nplace s2\n").net
    assert parse_marking(net, "2*s1 + s2") == Multiset({0: 2, 1: 1})
    assert parse_marking(net, "0") == EMPTY
    net8 = fixture("fig8a").net
    assert parse_marking(net8, "P1 + C1") == net8.marking(["P1", "C1"])
    with pytest.raises(NetFormatError):
        parse_marking(net, "s3")
    with pytest.raises(NetFormatError):
        parse_marking(net, "2 s1")


def test_parse_relation_examples():
    net10 = fixture("fig10").net
    doc = parse_relation(net10, "s1 ~ s4\n0 ~ s5\ns2 ~ s6\ns3 ~ 0", dummy_allowed=True)
    assert doc.pairs == {("s1", "s4"), ("0", "s5"), ("s2", "s6"), ("s3", "0")}
    r = doc.to_relation(net10)
    assert r.kind == "dummy"
    assert (net10.place("s3"), r.theta) in r.pairs
    net13 = fixture("fig13").net
    assert parse_relation(net13, "s1 ~ s3\ns2 ~ s4").pairs == {("s1", "s3"), ("s2", "s4")}
    with pytest.raises(NetFormatError):
        parse_relation(net13, "s1 ~ 0", dummy_allowed=False)
    with pytest.raises(NetFormatError):
        parse_relation(net13, "s1 ~ s99")


def test_corpus_round_trip():
    for name in ("fig4", "fig8", "fig9", "fig13", "fig6"):
        doc = fixture(name)
        text = serialize_net(doc)
        assert parse_net(text) == doc
        assert serialize_net(parse_net(text)) == text


@settings(max_examples=100)
@given(st.integers(0, 10**9))
def test_random_document_round_trip(seed):
    doc = random_document(make_rng(seed))
    text = serialize_net(doc)
    again = parse_net(text)
    assert again == doc
    assert serialize_net(again) == text


@settings(max_examples=100)
@given(st.integers(0, 10**9), st.sampled_from(["plain", "dummy"]))
def test_relation_round_trip(seed, kind):
    rng = make_rng(seed)
    net = random_document(rng).net
    r = random_relation(rng, net.n_places, kind)
    text = serialize_relation(relation_document(net, r), net)
    back = parse_relation(net, text, dummy_allowed=kind == "dummy").to_relation(net)
    assert back.pairs == r.pairs

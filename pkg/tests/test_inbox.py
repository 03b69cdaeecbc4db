import io
import json

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from preempt_inbox.errors import DuplicateId, IndexOutOfRange, InvariantViolation, ParseFailure
from preempt_inbox.inbox import (
    InboxName,
    InboxStore,
    StoredMessage,
    append_message,
    dumps_store,
    load_store,
    loads_store,
    read_message,
    save_store,
    view_messages,
)

from .oracles import naive_contains

DEF, PRI = InboxName.DEFAULT, InboxName.PRIORITY


def msg(i, origin="5554", body="hello", tick=0):
    return StoredMessage(i, origin, body, f"{origin} :{body}", tick)


def test_append_examples():
    m1 = msg(1)
    store = append_message(InboxStore(), DEF, m1)
    assert store[DEF] == [m1]
    with pytest.raises(DuplicateId):
        append_message(store, DEF, m1)
    append_message(store, PRI, m1)
    assert store[DEF] == store[PRI] == [m1]


def test_append_rejects_out_of_order():
    store = InboxStore()
    store.append(DEF, msg(3))
    with pytest.raises(InvariantViolation):
        store.append(DEF, msg(2))


def test_view_examples():
    store = InboxStore()
    for i, origin in enumerate(["5554", "5556", "5554"], start=1):
        store.append(DEF, msg(i, origin))
    assert [m.id for m in view_messages(store, DEF, "5554")] == [1, 3]
    assert [m.id for m in view_messages(store, DEF, "")] == [1, 2, 3]
    assert [m.id for m in view_messages(store, DEF, "555")] == [1, 2, 3]
    assert view_messages(store, PRI, "") == []


def test_read_examples():
    store = InboxStore()
    store.append(DEF, msg(1))
    store.append(DEF, msg(2, "5556", "bye"))
    store.append(PRI, msg(1))
    assert read_message(store, PRI, 0) == "5554 :hello"
    assert read_message(store, DEF, 1) == "5556 :bye"
    with pytest.raises(IndexOutOfRange):
        read_message(InboxStore(), DEF, 0)
    with pytest.raises(IndexOutOfRange):
        read_message(store, DEF, -1)


def test_save_format():
    store = InboxStore()
    store.append(DEF, msg(1, tick=3))
    assert dumps_store(store) == (
        b'{"box":"Default","id":1,"origin":"5554","body":"hello",'
        b'"display_text":"5554 :hello","tick":3}\n'
    )
    assert dumps_store(InboxStore()) == b""


def test_save_escapes_newlines_and_orders_boxes():
    store = InboxStore()
    store.append(DEF, msg(1, body="a\nb c\x00"))
    store.append(PRI, msg(1, body="a\nb c\x00"))
    data = dumps_store(store)
    lines = data.split(b"\n")
    assert len(lines) == 3 and lines[-1] == b""
    assert json.loads(lines[0])["box"] == "Default" and json.loads(lines[1])["box"] == "Priority"
    assert loads_store(data) == store


def test_load_priority_orphan_is_invariant_violation():
    store = InboxStore()
    store.append(DEF, msg(1))
    store.append(PRI, msg(1))
    edited = dumps_store(store).replace(b'"box":"Default","id":1', b'"box":"Default","id":2')
    with pytest.raises(InvariantViolation):
        loads_store(edited)


@pytest.mark.parametrize(
    "data, line",
    [
        (b"not json\n", 1),
        (b'{"box":"Default","id":1,"origin":"5554","body":"x","display_text":"x","tick":0}\n[]\n', 2),
        (b'{"box":"Inbox","id":1,"origin":"5554","body":"x","display_text":"x","tick":0}\n', 1),
        (b'{"id":1,"box":"Default","origin":"5554","body":"x","display_text":"x","tick":0}\n', 1),
        (b'{"box":"Default","id":"1","origin":"5554","body":"x","display_text":"x","tick":0}\n', 1),
        (b'{"box":"Default","id":1,"origin":"55x","body":"x","display_text":"x","tick":0}\n', 1),
        (b'{"box":"Default","id":1,"origin":"5554","body":"x","display_text":"x","tick":0}\n'
         b'{"box":"Default","id":1,"origin":"5554","body":"x","display_text":"x","tick":0}\n', 2),
        (b'{"box":"Default","id":1,"origin":"5554","body":"x","display_text":"x","tick":0}\n\n', 2),
    ],
)
def test_load_parse_failures(data, line):
    with pytest.raises(ParseFailure) as exc:
        loads_store(data)
    assert exc.value.line == line


def test_stream_round_trip():
    store = InboxStore()
    store.append(DEF, msg(1))
    buf = io.BytesIO()
    save_store(store, buf)
    buf.seek(0)
    assert load_store(buf) == store


origins = st.sampled_from(["5554", "5556", "555", "15554", "9", "0"])


@st.composite
def stores(draw):
    store = InboxStore()
    n = draw(st.integers(0, 15))
    for i in range(1, n + 1):
        m = StoredMessage(i, draw(origins), draw(st.text(max_size=20)), draw(st.text(max_size=20)), draw(st.integers(0, 10**6)))
        store.append(DEF, m)
        if draw(st.booleans()):
            store.append(PRI, m)
    return store


@settings(suppress_health_check=[HealthCheck.too_slow])
@given(stores())
def test_round_trip_property(store):
    assert loads_store(dumps_store(store)) == store


@settings(suppress_health_check=[HealthCheck.too_slow])
@given(stores(), st.sampled_from(list(InboxName)), st.text(alphabet="0123456789", max_size=4))
def test_filter_oracle_and_order(store, box, flt):
    got = view_messages(store, box, flt)
    assert got == [m for m in store[box] if naive_contains(m.origin, flt)]
    positions = [store[box].index(m) for m in got]
    assert positions == sorted(positions)

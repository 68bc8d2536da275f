import pytest
from hypothesis import given
from hypothesis import strategies as st

from procviz.model import ExecutionEvent, RevisionHistory, SessionKind, Snapshot
from procviz.sessionfile import MalformedSessionError, dumps, load_bytes, loads


def make_history(**overrides):
    fields = dict(
        kind=SessionKind.TEXT,
        snapshots=(Snapshot(0, ""), Snapshot(5000, "hello\nworld")),
        executions=(ExecutionEvent(2500, True, "ok"), ExecutionEvent(4000, False)),
        capture_interval_ms=5000,
    )
    fields.update(overrides)
    return RevisionHistory(**fields)


class TestRoundTrip:
    def test_loads_inverts_dumps(self):
        h = make_history()
        assert loads(dumps(h)) == h

    def test_byte_exact_canonical_round_trip(self):
        text = dumps(make_history())
        assert dumps(loads(text)) == text

    def test_newlines_and_quotes_escaped(self):
        h = make_history(
            snapshots=(Snapshot(0, 'say "hi"\n\ttab'),), executions=()
        )
        text = dumps(h)
        assert len(text.splitlines()) == 4  # header + one record, no raw newline leaks
        assert loads(text).snapshots[0].content == 'say "hi"\n\ttab'

    def test_detail_none_round_trips(self):
        h = make_history(executions=(ExecutionEvent(100, False, None),))
        assert loads(dumps(h)).executions[0].detail is None

    @given(
        st.lists(
            st.tuples(
                st.integers(min_value=0, max_value=10**9),
                st.text(max_size=80),
            ),
            min_size=1,
            max_size=10,
            unique_by=lambda p: p[0],
        )
    )
    def test_arbitrary_content_round_trips(self, raw):
        seen = set()
        snaps = []
        for t, content in sorted(raw):
            if not snaps or snaps[-1].content != content:
                snaps.append(Snapshot(t, content))
        h = make_history(snapshots=tuple(snaps), executions=())
        text = dumps(h)
        assert loads(text) == h
        assert dumps(loads(text)) == text


class TestHeader:
    def test_marker_line_first(self):
        assert dumps(make_history()).startswith("pfsession/1\nkind text\ninterval 5000\n")

    def test_code_kind(self):
        h = make_history(kind=SessionKind.CODE, executions=())
        assert loads(dumps(h)).kind is SessionKind.CODE


class TestMalformed:
    @pytest.mark.parametrize(
        "text",
        [
            "",
            "pfsession/1\n",
            "wrong/1\nkind text\ninterval 5000\n",
            "pfsession/1\nkind nope\ninterval 5000\n",
            "pfsession/1\nkind text\ninterval x\n",
            "pfsession/1\nkind text\ninterval 5000\ns 0\n",
            "pfsession/1\nkind text\ninterval 5000\ns 0 notjson\n",
            "pfsession/1\nkind text\ninterval 5000\ns 0 123\n",
            "pfsession/1\nkind text\ninterval 5000\nq 0 \"a\"\n",
            "pfsession/1\nkind text\ninterval 5000\nx 1 2 \"d\"\n",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(MalformedSessionError):
            loads(text)

    def test_rejects_non_utf8(self):
        with pytest.raises(MalformedSessionError):
            load_bytes(b"\xff\xfe\x00bad")

    def test_raw_mode_preserves_record_order(self):
        text = 'pfsession/1\nkind text\ninterval 5000\ns 5000 "b"\ns 0 "a"\n'
        raw = loads(text, validate=False)
        assert [s.t for s in raw.snapshots] == [5000, 0]
        validated = loads(text)
        assert [s.t for s in validated.snapshots] == [0, 5000]

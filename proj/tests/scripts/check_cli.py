#!/usr/bin/env python3
"""Exit-code and output contract of the ctsearch binary."""

import argparse
import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ctsearch", required=True)
    ap.add_argument("--source", required=True)
    args = ap.parse_args()
    src = Path(args.source)
    failures = []

    def run(*argv, env=None):
        e = dict(os.environ, SOURCE_DATE_EPOCH="1700000000")
        e.pop("NO_COLOR", None)
        e.update(env or {})
        return subprocess.run([args.ctsearch, *argv], capture_output=True, text=True, env=e)

    def check(cond, what):
        print(("ok   " if cond else "FAIL ") + what)
        if not cond:
            failures.append(what)

    with tempfile.TemporaryDirectory() as tmp:
        idx = os.path.join(tmp, "s.idx")
        r = run("index", "build", "--in", str(src / "data/sample"), "--out", idx)
        check(r.returncode == 0, "index build exits 0")
        check("dropped" in r.stderr and "wrote" in r.stdout, "diagnostics on stderr, summary on stdout")

        check(run("--help").returncode == 0, "--help exits 0")
        check(run().returncode == 64, "no subcommand exits 64")
        check(run("search", "--index", idx, "--q", "").returncode == 64, "empty --q exits 64")
        check(run("search", "--index", idx).returncode == 64, "missing --q exits 64")
        check(run("search", "--index", os.path.join(tmp, "none.idx"), "--q", "x").returncode == 2,
              "unloadable index exits 2")

        check(run("search", "--index", idx, "--q", "x", "--frobnicate").returncode == 64, "unknown flag exits 64")
        r = run("serve", "--index", os.path.join(tmp, "none.idx"), "--port", "0")
        check(r.returncode == 2, "serve refuses to start without a loadable index")

        r = run("search", "--index", idx, "--q", "zzznonsense")
        check(r.returncode == 0 and "0 matches" in r.stdout, "zero matches exits 0 and prints the count")

        r = run("search", "--index", idx, "--q", "double category")
        check("free **double category**" in r.stdout and "\x1b[" not in r.stdout,
              "piped output uses plain emphasis")
        r = run("search", "--index", idx, "--q", "double category", "--color", "always", env={"NO_COLOR": "1"})
        check("\x1b[" in r.stdout, "explicit --color always overrides NO_COLOR")
        r = run("search", "--index", idx, "--q", "double category", "--color", "always")
        check("\x1b[" in r.stdout, "--color always emits ANSI")

        r = run("link", "--q", "category")
        check(r.returncode == 0 and "Q719395" in r.stdout, "link replays the recorded category response")
        r = run("link", "--q", "double category", "--index", idx)
        check(r.returncode == 2 and "double+category" in r.stdout and "--live" in r.stderr,
              "missing fixture exits 2, keeps nLab, hints --live")

        bad = os.path.join(tmp, "bad.txt")
        Path(bad).write_bytes(b"ok\n\nbr\x01oken\n")
        r = run("eval", "--index", idx, "--gold", "author", "--pred", bad)
        check(r.returncode == 1 and "line 3" in r.stderr, "malformed prediction exits 1 naming line 3")
        gold = os.path.join(tmp, "gold.txt")
        Path(gold).write_text("double categories\nmonad\n")
        empty = os.path.join(tmp, "empty.txt")
        Path(empty).write_text("")
        r = run("eval", "--index", idx, "--gold", gold, "--pred", gold, "--json")
        row = json.loads(r.stdout)["rows"][0] if r.returncode == 0 else {}
        check(row.get("precision") == 1 and row.get("recall") == 1 and row.get("f1") == 1,
              "predictions identical to gold score 1/1/1")
        r = run("eval", "--index", idx, "--gold", gold, "--pred", empty, "--json")
        row = json.loads(r.stdout)["rows"][0] if r.returncode == 0 else {}
        check(row.get("precision") == 0 and row.get("recall") == 0 and row.get("f1") == 0,
              "empty prediction file scores 0/0/0")
        r = run("eval", "--index", idx, "--gold", "author", "--pred", "textrank", "--pred", "mwe")
        check(r.returncode == 0 and "TextRank" in r.stdout and "MWE" in r.stdout, "eval prints both rows")

        raw = Path(tmp, "raw")
        raw.mkdir()
        meta = Path(tmp, "meta.jsonl")
        meta.write_text("")
        r = run("ingest", "--corpus", "NLAB", "--raw", str(raw), "--meta", str(meta), "--out", os.path.join(tmp, "o"))
        check(r.returncode == 0 and "warning" in r.stderr.lower(), "empty raw dir warns and exits 0")
        (raw / "a.md").write_text("# A\n\nSome *text* here.\n")
        meta.write_text('{"doc_id":"a","corpus":"NLAB","title":"a"}\n')
        out1 = run("ingest", "--corpus", "NLAB", "--raw", str(raw), "--meta", str(meta), "--out", os.path.join(tmp, "o"))
        first = Path(tmp, "o/NLAB.conllu").read_bytes()
        run("ingest", "--corpus", "NLAB", "--raw", str(raw), "--meta", str(meta), "--out", os.path.join(tmp, "o"))
        check(out1.returncode == 0 and Path(tmp, "o/NLAB.conllu").read_bytes() == first, "ingest rerun is byte-identical")
        r = run("ingest", "--corpus", "NLAB", "--raw", os.path.join(tmp, "missing"), "--meta", str(meta),
                "--out", os.path.join(tmp, "o"))
        check(r.returncode == 1, "unreadable input exits 1")

    print(f"{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Starts `ctsearch serve` on an ephemeral port and validates every API
response against schema/api.schema.json. Also checks that `search --json`
prints exactly the HTTP body and that SIGTERM shuts the server down cleanly."""

import argparse
import json
import os
import re
import signal
import subprocess
import sys
import tempfile
import time
import urllib.error
import urllib.request
from pathlib import Path

import jsonschema


def fetch(base, path, headers=None):
    req = urllib.request.Request(base + path, headers=headers or {})
    try:
        with urllib.request.urlopen(req, timeout=10) as resp:
            return resp.status, json.loads(resp.read()), dict(resp.headers)
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read()), dict(e.headers)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ctsearch", required=True)
    ap.add_argument("--source", required=True)
    args = ap.parse_args()
    src = Path(args.source)
    schema = json.loads((src / "schema/api.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)

    def validator(name):
        sub = {"$schema": schema["$schema"], "$defs": schema["$defs"], "$ref": f"#/$defs/{name}"}
        return jsonschema.Draft202012Validator(sub)

    failures = []

    def check(cond, what):
        print(("ok   " if cond else "FAIL ") + what)
        if not cond:
            failures.append(what)

    with tempfile.TemporaryDirectory() as tmp:
        index = os.path.join(tmp, "sample.idx")
        env = dict(os.environ, SOURCE_DATE_EPOCH="1700000000")
        subprocess.run([args.ctsearch, "index", "build", "--in", str(src / "data/sample"), "--out", index],
                       check=True, env=env, capture_output=True)
        proc = subprocess.Popen(
            [args.ctsearch, "serve", "--index", index, "--port", "0"],
            stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True, env=env)
        try:
            line = proc.stdout.readline()
            m = re.search(r"listening on (http://[^\s]+)", line)
            check(m is not None, "server announces its address")
            if m is None:
                return 1
            base = m.group(1)
            deadline = time.time() + 10
            status, body, _ = fetch(base, "/api/health")
            while status == 503 and time.time() < deadline:
                time.sleep(0.05)
                status, body, _ = fetch(base, "/api/health")
            check(status == 200, "health becomes ready")
            validator("health_response").validate(body)
            check(body["status"] == "ok" and body["mode"] == "replay", "health reports replay mode")

            cases = [
                ("/api/search?q=double%20category", 200, "search_response"),
                ("/api/search?q=double%20categories&corpora=TAC", 200, "search_response"),
                ("/api/search?q=category&limit=1&offset=1", 200, "search_response"),
                ("/api/search?q=zzznonsense", 200, "search_response"),
                ("/api/search?q=", 400, "error"),
                ("/api/search?q=x&corpora=ARXIV", 400, "error"),
                ("/api/search?q=x&limit=nope", 400, "error"),
                ("/api/link?q=category", 200, "link_response"),
                ("/api/link?q=double%20category", 502, "link_response"),
                ("/api/link?q=zzznonsense", 200, "link_response"),
                ("/api/link?q=", 400, "error"),
                ("/api/unknown", 404, "error"),
            ]
            bodies = {}
            for path, want, name in cases:
                status, body, _ = fetch(base, path)
                ok = status == want
                try:
                    validator(name).validate(body)
                except jsonschema.ValidationError as e:
                    ok = False
                    print("     ", e.message)
                check(ok, f"{path} -> {status} matches {name}")
                bodies[path] = body

            nonsense = bodies["/api/link?q=zzznonsense"]
            check(nonsense["wikidata"] == [] and nonsense["nlab"] == [], "unknown term gives two empty sections")
            again = fetch(base, "/api/search?q=double%20category")[1]
            check(again == bodies["/api/search?q=double%20category"], "identical requests give identical bodies")
            tac_only = bodies["/api/search?q=double%20categories&corpora=TAC"]
            check(list(tac_only["corpora"]) == ["TAC"], "hidden corpus absent from body")
            link = bodies["/api/link?q=category"]
            check(any(e["id"] == "Q719395" for e in link["wikidata"]), "link returns Q719395")
            check(bodies["/api/link?q=double%20category"]["nlab"][0]["slug"] == "double+category",
                  "nLab entry survives missing Wikidata fixture")

            cli = subprocess.run([args.ctsearch, "search", "--index", index, "--q", "double category", "--json"],
                                 capture_output=True, text=True, env=env)
            check(cli.returncode == 0 and json.loads(cli.stdout) == bodies["/api/search?q=double%20category"],
                  "CLI --json equals the HTTP body")
        finally:
            proc.send_signal(signal.SIGTERM)
            try:
                code = proc.wait(timeout=10)
            except subprocess.TimeoutExpired:
                proc.kill()
                code = None
            check(code == 0, f"SIGTERM exits 0 (got {code})")
            err = proc.stderr.read()
            events = [json.loads(l)["event"] for l in err.splitlines() if l.startswith("{")]
            check("shutdown" in events and "request" in events, "structured log has request and shutdown events")

    print(f"{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

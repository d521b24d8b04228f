#!/usr/bin/env python3
"""Expands sample.tagged into <CORPUS>.conllu.

Input lines:
  @doc CORPUS DOC_ID       starts a document
  form/UPOS[/lemma] ...    one sentence; a leading ^ glues a token to the
                           previous one (no space in the sentence text)
Lemmas default to the lower-cased form (the form itself for PROPN).
Heads follow a fixed attachment scheme so every tree is well formed.
"""
import sys
from pathlib import Path

NO_SPACE_BEFORE = {".", ",", ";", ":", ")", "'s"}
NO_SPACE_AFTER = {"("}


def parse_token(raw):
    glue = raw.startswith("^")
    if glue:
        raw = raw[1:]
    parts = raw.split("/")
    if len(parts) == 4 and parts[0] == "" and parts[1] == "":
        parts = ["/"] + parts[2:]
    if len(parts) not in (2, 3):
        raise ValueError(f"bad token {raw!r}")
    form, upos = parts[0], parts[1]
    lemma = parts[2] if len(parts) == 3 else (form if upos == "PROPN" else form.lower())
    return {"form": form, "upos": upos, "lemma": lemma, "glue": glue}


def attach(tokens):
    n = len(tokens)
    root = next((i for i, t in enumerate(tokens) if t["upos"] == "VERB"), None)
    if root is None:
        root = next((i for i, t in enumerate(tokens) if t["upos"] == "AUX"), None)
    if root is None:
        root = next((i for i, t in enumerate(tokens) if t["upos"] in ("NOUN", "PROPN")), 0)

    def next_nominal(i):
        for j in range(i + 1, n):
            if tokens[j]["upos"] in ("NOUN", "PROPN", "PRON", "NUM"):
                return j
            if tokens[j]["upos"] in ("VERB", "AUX", "PUNCT", "CCONJ", "SCONJ"):
                return None
        return None

    seen_subject = False
    for i, t in enumerate(tokens):
        u = t["upos"]
        if i == root:
            t["head"], t["deprel"] = 0, "root"
            continue
        head, rel = root, "dep"
        if u == "PUNCT":
            rel = "punct"
        elif u in ("DET", "ADJ", "ADP", "NUM"):
            j = next_nominal(i)
            if j is not None and j != i:
                head = j
            rel = {"DET": "det", "ADJ": "amod", "ADP": "case", "NUM": "nummod"}[u]
        elif u in ("NOUN", "PROPN", "PRON"):
            if i + 1 < n and tokens[i + 1]["upos"] in ("NOUN", "PROPN") and i + 1 != root:
                head, rel = i + 1, "compound"
            elif i < root and not seen_subject:
                rel, seen_subject = "nsubj", True
            else:
                rel = "obj" if i > root else "nmod"
        elif u == "AUX":
            rel = "cop" if tokens[root]["upos"] in ("NOUN", "PROPN") else "aux"
        elif u == "ADV":
            rel = "advmod"
        elif u == "CCONJ":
            rel = "cc"
        elif u in ("SCONJ", "PART"):
            rel = "mark"
        elif u == "VERB":
            rel = "conj"
        if head == i:
            head = root
        t["head"], t["deprel"] = (0 if head is None else head + 1), rel
    return tokens


def render(corpus, docs):
    out = []
    for doc_id, sentences in docs:
        out.append(f"# newdoc id = {doc_id}")
        for k, tokens in enumerate(sentences, 1):
            attach(tokens)
            text = ""
            for i, t in enumerate(tokens):
                if i > 0 and not (t["glue"] or t["form"] in NO_SPACE_BEFORE or tokens[i - 1]["form"] in NO_SPACE_AFTER):
                    text += " "
                text += t["form"]
            out.append(f"# sent_id = {doc_id}-s{k}")
            out.append(f"# text = {text}")
            for i, t in enumerate(tokens):
                nxt = tokens[i + 1] if i + 1 < len(tokens) else None
                no_space = nxt is not None and (nxt["glue"] or nxt["form"] in NO_SPACE_BEFORE or t["form"] in NO_SPACE_AFTER)
                misc = "SpaceAfter=No" if no_space else "_"
                out.append("\t".join([str(i + 1), t["form"], t["lemma"], t["upos"], "_", "_",
                                      str(t["head"]), t["deprel"], "_", misc]))
            out.append("")
    return "\n".join(out) + "\n"


def main():
    here = Path(__file__).resolve().parent
    src = here / "sample.tagged"
    corpora = {}
    current = None
    for line_no, line in enumerate(src.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@doc "):
            _, corpus, doc_id = line.split(" ", 2)
            current = (doc_id, [])
            corpora.setdefault(corpus, []).append(current)
            continue
        if current is None:
            sys.exit(f"line {line_no}: sentence before @doc")
        current[1].append([parse_token(t) for t in line.split()])
    for corpus, docs in corpora.items():
        (here / f"{corpus}.conllu").write_text(render(corpus, docs), encoding="utf-8")


if __name__ == "__main__":
    main()

import json
import subprocess
import sys

import pytest

from textgraph.cli import (
    EXIT_BELOW_THRESHOLD,
    EXIT_CONFIG,
    EXIT_FORMAT,
    EXIT_OK,
    EXIT_TOPIC_NOT_FOUND,
    EXIT_USAGE,
    main,
)
from textgraph.corpus import load_corpus


@pytest.fixture()
def sample_args(sample_dir):
    cfg = sample_dir / "config.json"
    return ["--config", str(cfg)]


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------- usage


def test_no_command_is_usage_error(capsys):
    assert run(capsys, [])[0] == EXIT_USAGE


def test_unknown_flag_is_usage_error(capsys, sample_dir):
    code, *_ = run(capsys, ["summarize", str(sample_dir / "karuna_a.txt"), "--frob"])
    assert code == EXIT_USAGE


def test_missing_topic_is_usage_error(capsys, sample_dir):
    code, *_ = run(capsys, ["summarize", str(sample_dir / "karuna_a.txt")])
    assert code == EXIT_USAGE


def test_profile_topic_and_raw_conflict(capsys, sample_dir, sample_args):
    doc = str(sample_dir / "karuna_a.txt")
    code, *_ = run(capsys, ["profile", doc, "--topic", "KLF", "--raw"] + sample_args)
    assert code == EXIT_USAGE
    code, *_ = run(capsys, ["profile", doc] + sample_args)
    assert code == EXIT_USAGE


# ---------------------------------------------------------------- summarize


def test_summarize_happy_path(capsys, sample_dir, sample_args):
    doc = str(sample_dir / "karuna_a.txt")
    code, out, err = run(capsys, ["summarize", doc, "--topic", "KLF"] + sample_args)
    assert code == EXIT_OK
    assert out.startswith("SUMMARY: karuna_a.txt")
    assert "[s" in out


def test_summarize_top_k_respected(capsys, sample_dir, sample_args):
    doc = str(sample_dir / "karuna_a.txt")
    code, out, _ = run(
        capsys,
        ["summarize", doc, "--topic", "KLF", "--top-k", "2", "--format", "csv"]
        + sample_args,
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "sentence_index,score"
    assert len(lines) == 3


def test_summarize_large_k_emits_whole_document_in_order(
    capsys, sample_dir, sample_args
):
    doc = str(sample_dir / "karuna_a.txt")
    code, out, _ = run(
        capsys,
        ["summarize", doc, "--topic", "KLF", "--top-k", "999", "--format", "csv"]
        + sample_args,
    )
    assert code == EXIT_OK
    indexes = [int(line.split(",")[0]) for line in out.strip().splitlines()[1:]]
    assert indexes == sorted(indexes)
    assert len(indexes) == 13  # sentence count of the bundled document


def test_summarize_structured_is_json(capsys, sample_dir, sample_args):
    doc = str(sample_dir / "karuna_a.txt")
    code, out, _ = run(
        capsys,
        ["summarize", doc, "--topic", "KLF", "--format", "structured"] + sample_args,
    )
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["doc"] == "karuna_a.txt"
    assert obj["sentences"]


def test_summarize_topic_not_found(capsys, sample_dir, sample_args):
    doc = str(sample_dir / "karuna_a.txt")
    code, out, err = run(
        capsys, ["summarize", doc, "--topic", "submarine"] + sample_args
    )
    assert code == EXIT_TOPIC_NOT_FOUND
    assert "topic not found" in err
    assert "candidate topics:" in err


def test_all_stopword_topic_is_config_error(capsys, sample_dir, sample_args):
    doc = str(sample_dir / "karuna_a.txt")
    code, *_ = run(capsys, ["summarize", doc, "--topic", "the, of"] + sample_args)
    assert code == EXIT_CONFIG


def test_missing_document_is_io_error(capsys, sample_args, tmp_path):
    code, *_ = run(
        capsys, ["summarize", str(tmp_path / "gone.txt"), "--topic", "x"] + sample_args
    )
    assert code == EXIT_FORMAT


def test_empty_document_is_format_error(capsys, sample_args, tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("\n\n", encoding="utf-8")
    code, *_ = run(capsys, ["summarize", str(empty), "--topic", "x"] + sample_args)
    assert code == EXIT_FORMAT


# ---------------------------------------------------------------- compare


def test_compare_happy_path(capsys, sample_dir, sample_args):
    a = str(sample_dir / "karuna_a.txt")
    b = str(sample_dir / "karuna_b.txt")
    code, out, _ = run(capsys, ["compare", a, b, "--topic", "KLF"] + sample_args)
    assert code == EXIT_OK
    assert "COMMON" in out
    assert "UNIQUE TO karuna_a.txt" in out
    assert "UNIQUE TO karuna_b.txt" in out
    assert "THRESHOLDS" in out


def test_compare_alias_topic_equivalent(capsys, sample_dir, sample_args):
    a = str(sample_dir / "karuna_a.txt")
    b = str(sample_dir / "karuna_b.txt")
    _, via_acronym, _ = run(capsys, ["compare", a, b, "--topic", "KLF"] + sample_args)
    _, via_full, _ = run(
        capsys,
        ["compare", a, b, "--topic", "Karuna Liberation Front"] + sample_args,
    )
    assert via_acronym.splitlines()[1:] == via_full.splitlines()[1:]


def test_compare_below_threshold_still_prints(capsys, sample_dir, sample_args):
    a = str(sample_dir / "karuna_a.txt")
    b = str(sample_dir / "karuna_b.txt")
    code, out, _ = run(
        capsys,
        ["compare", a, b, "--topic", "KLF", "--min-unique-concepts", "100000"]
        + sample_args,
    )
    assert code == EXIT_BELOW_THRESHOLD
    assert "COMMON" in out
    assert "below threshold" in out


def test_compare_csv_format(capsys, sample_dir, sample_args):
    a = str(sample_dir / "karuna_a.txt")
    b = str(sample_dir / "karuna_b.txt")
    code, out, _ = run(
        capsys, ["compare", a, b, "--topic", "KLF", "--format", "csv"] + sample_args
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "section,key,kind,weight_g1,weight_g2"
    sections = {line.split(",")[0] for line in lines[1:]}
    assert sections <= {"common", "unique_g1", "unique_g2"}
    assert "common" in sections


def test_compare_structured_format(capsys, sample_dir, sample_args):
    a = str(sample_dir / "karuna_a.txt")
    b = str(sample_dir / "karuna_b.txt")
    code, out, _ = run(
        capsys,
        ["compare", a, b, "--topic", "KLF", "--format", "structured"] + sample_args,
    )
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["doc1"] == "karuna_a.txt"
    assert obj["common"]
    assert obj["thresholds"]["passed"] is True


def test_compare_flags_override_config(capsys, sample_dir, sample_args):
    a = str(sample_dir / "karuna_a.txt")
    b = str(sample_dir / "karuna_b.txt")
    code, out, _ = run(
        capsys,
        [
            "compare", a, b, "--topic", "KLF",
            "--max-common", "1", "--max-diff", "1",
            "--max-nodes", "30", "--decay-rate", "0.9",
            "--selection-mode", "plain_topk",
        ]
        + sample_args,
    )
    assert code == EXIT_OK
    assert out.count("[karuna_a.txt s") + out.count("[karuna_b.txt s") <= 3


# ---------------------------------------------------------------- profile


def test_profile_raw_and_topic_differ(capsys, sample_dir, sample_args):
    doc = str(sample_dir / "karuna_a.txt")
    code_raw, raw_out, _ = run(capsys, ["profile", doc, "--raw"] + sample_args)
    code_act, act_out, _ = run(capsys, ["profile", doc, "--topic", "KLF"] + sample_args)
    assert code_raw == code_act == EXIT_OK
    assert raw_out.splitlines()[0] == "sentence_index,mean_activation"
    assert raw_out != act_out
    for line in raw_out.strip().splitlines()[1:]:
        idx, val = line.split(",")
        int(idx)
        float(val)


# ---------------------------------------------------------------- suggest


def test_suggest_topics_output(capsys, sample_dir, sample_args):
    a = str(sample_dir / "karuna_a.txt")
    b = str(sample_dir / "karuna_b.txt")
    code, out, _ = run(capsys, ["suggest-topics", a, b, "--limit", "3"] + sample_args)
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert 0 < len(lines) <= 3
    for line in lines:
        term, weight = line.split("\t")
        float(weight)


# ---------------------------------------------------------------- corpus


def test_build_corpus_round_trip(capsys, tmp_path):
    docs = tmp_path / "docs"
    docs.mkdir()
    (docs / "a.txt").write_text("Guards watched the palace.", encoding="utf-8")
    (docs / "b.txt").write_text("The palace fell at dawn.", encoding="utf-8")
    out_path = tmp_path / "corpus.txt"
    code, out, _ = run(capsys, ["build-corpus", str(docs), str(out_path)])
    assert code == EXIT_OK
    assert "built corpus: n=2" in out
    corpus = load_corpus(out_path)
    assert corpus.n == 2
    assert corpus.df[("palac" if "palac" in corpus.df else "palace")] == 2

    first = out_path.read_bytes()
    code, *_ = run(capsys, ["build-corpus", str(docs), str(out_path)])
    assert code == EXIT_OK
    assert out_path.read_bytes() == first


def test_build_corpus_skips_empty_with_warning(capsys, tmp_path):
    docs = tmp_path / "docs"
    docs.mkdir()
    (docs / "a.txt").write_text("Guards watched.", encoding="utf-8")
    (docs / "empty.txt").write_text("  \n", encoding="utf-8")
    out_path = tmp_path / "corpus.txt"
    code, out, err = run(capsys, ["build-corpus", str(docs), str(out_path)])
    assert code == EXIT_OK
    assert "skipping empty document" in err
    assert load_corpus(out_path).n == 1


def test_build_corpus_rejects_bad_inputs(capsys, tmp_path):
    empty_dir = tmp_path / "none"
    empty_dir.mkdir()
    assert run(capsys, ["build-corpus", str(empty_dir), str(tmp_path / "c.txt")])[0] == EXIT_CONFIG
    assert (
        run(capsys, ["build-corpus", str(tmp_path / "missing"), str(tmp_path / "c.txt")])[0]
        == EXIT_CONFIG
    )


# ---------------------------------------------------------------- config


def test_bad_config_path_is_config_error(capsys, sample_dir, tmp_path):
    doc = str(sample_dir / "karuna_a.txt")
    code, *_ = run(
        capsys,
        ["summarize", doc, "--topic", "x", "--config", str(tmp_path / "no.json")],
    )
    assert code == EXIT_CONFIG


def test_corrupt_corpus_is_format_error(capsys, sample_dir, tmp_path):
    corrupt = tmp_path / "corpus.txt"
    corrupt.write_text("#textgraph-corpus v1 n=2 stemmer=porter-fixpoint\nzeta\t9\n")
    doc = str(sample_dir / "karuna_a.txt")
    code, *_ = run(
        capsys, ["summarize", doc, "--topic", "x", "--corpus", str(corrupt)]
    )
    assert code == EXIT_FORMAT


def test_env_var_supplies_config(capsys, sample_dir, monkeypatch):
    monkeypatch.setenv("TEXTGRAPH_CONFIG", str(sample_dir / "config.json"))
    doc = str(sample_dir / "karuna_a.txt")
    code, out, _ = run(capsys, ["summarize", doc, "--topic", "KLF"])
    assert code == EXIT_OK
    assert out.startswith("SUMMARY:")


# ---------------------------------------------------------------- module


def test_module_invocation_matches_in_process(capsys, sample_dir, sample_args):
    a = str(sample_dir / "karuna_a.txt")
    b = str(sample_dir / "karuna_b.txt")
    argv = ["compare", a, b, "--topic", "KLF"] + sample_args
    code, out, _ = run(capsys, argv)
    proc = subprocess.run(
        [sys.executable, "-m", "textgraph"] + argv,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == code == EXIT_OK
    assert proc.stdout == out


def test_module_help_exits_zero():
    proc = subprocess.run(
        [sys.executable, "-m", "textgraph", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "build-corpus" in proc.stdout

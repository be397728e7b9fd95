import json
import os
import subprocess

import pytest

import ifalign


def test_levenshtein_known_values():
    assert ifalign.levenshtein("kitten", "sitting") == 3
    assert ifalign.levenshtein("", "abc") == 3
    assert ifalign.levenshtein("same", "same") == 0


def test_edit_similarity_range():
    assert ifalign.edit_similarity("", "") == 1.0
    assert ifalign.edit_similarity("abc", "abc") == 1.0
    assert 0.0 <= ifalign.edit_similarity("abc", "xyz") <= 1.0


def test_viterbi_alignment_monotone():
    scores = [
        [5.0, 0.0, 0.0],
        [0.0, 4.0, 0.0],
        [0.0, 0.0, 3.0],
    ]
    assign, score = ifalign.viterbi_alignment(scores)
    assert assign == [0, 1, 2]
    assert score == pytest.approx(12.0)
    # ties resolve to the earliest step
    assign, _ = ifalign.viterbi_alignment([[1.0, 1.0]])
    assert assign == [0]


def test_generate_dataset_deterministic():
    a = ifalign.generate_dataset("maze", count=3, seed=7)
    b = ifalign.generate_dataset("maze", count=3, seed=7)
    assert a == b
    assert len(a) == 3
    rec = json.loads(a[0])
    for key in ("id", "env", "instance", "start", "instructions", "actions"):
        assert key in rec
    assert rec["env"] == "maze"


def test_cli_roundtrip(tmp_path):
    cli = os.environ.get("IFALIGN_CLI")
    if not cli or not os.path.exists(cli):
        pytest.skip("IFALIGN_CLI not set")
    out = tmp_path / "out"
    env = dict(os.environ, IFALIGN_GEN_COUNT="6")
    r = subprocess.run(
        [cli, "--env", "maze", "--seed", "3", "--out", str(out), "gen"],
        capture_output=True, text=True, env=env,
    )
    assert r.returncode == 0, r.stderr
    train = (out / "train.jsonl").read_text().strip().splitlines()
    test = (out / "test.jsonl").read_text().strip().splitlines()
    assert len(train) + len(test) == 6

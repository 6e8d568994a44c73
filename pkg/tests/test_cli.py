import json
from pathlib import Path

from echosent.cli import main

ENGLISH_TEXTS = [
    "the vaccine works well for people here",
    "new cases reported in the city today",
    "people need to stay home and wash hands",
    "the school closed early this week",
    "good news about the masks supply today",
    "this lockdown makes the days feel long",
    "hospital staff work hard every day",
    "we all hope for better times soon",
]
FRENCH_TEXTS = [
    "le confinement est vraiment difficile pour toute la famille",
    "nous restons chez nous pendant cette semaine",
]


def write_mixed_corpus(path: Path) -> None:
    lines = []
    for i, text in enumerate(ENGLISH_TEXTS):
        lines.append(json.dumps({
            "id": f"en{i}", "date": "2020-03-01", "city": "Toronto",
            "text": text, "like_count": i,
        }))
    lines.append(json.dumps({
        "id": "fr0", "date": "2020-03-01", "city": "Toronto",
        "text": FRENCH_TEXTS[0], "lang": "fr",
    }))
    lines.append(json.dumps({
        "id": "fr1", "date": "2020-03-02", "city": "Toronto",
        "text": FRENCH_TEXTS[1],
    }))
    path.write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# clean


def test_clean_reports_rule2_removals(tmp_path, capsys):
    corpus = tmp_path / "raw.jsonl"
    write_mixed_corpus(corpus)
    report_path = tmp_path / "report.json"
    rc = main(["clean", "--in", str(corpus), "--out", str(tmp_path / "clean.jsonl"),
               "--report", str(report_path)])
    assert rc == 0
    report = json.loads(report_path.read_text())
    assert report["input_posts"] == 10
    assert report["rule2_removed_non_english"] == 2
    assert report["output_posts"] == 8


def test_clean_idempotent(tmp_path):
    corpus = tmp_path / "raw.jsonl"
    corpus.write_text(json.dumps({
        "id": "a", "date": "2020-03-01", "city": "X",
        "text": "@bob the vaccine works well https://t.co/x #covid",
    }) + "\n")
    once = tmp_path / "once.jsonl"
    twice = tmp_path / "twice.jsonl"
    assert main(["clean", "--in", str(corpus), "--out", str(once)]) == 0
    assert main(["clean", "--in", str(once), "--out", str(twice)]) == 0
    assert once.read_bytes() == twice.read_bytes()
    assert "covid" in json.loads(once.read_text())["text"]


def test_clean_empty_corpus(tmp_path):
    corpus = tmp_path / "raw.jsonl"
    corpus.write_text("")
    out = tmp_path / "clean.jsonl"
    report_path = tmp_path / "report.json"
    rc = main(["clean", "--in", str(corpus), "--out", str(out), "--report", str(report_path)])
    assert rc == 0
    assert out.read_text() == ""
    report = json.loads(report_path.read_text())
    assert report["output_posts"] == 0
    assert all(v == 0 for v in report.values())


def test_clean_exits_nonzero_on_heavy_malformation(tmp_path):
    corpus = tmp_path / "raw.jsonl"
    good = json.dumps({"id": "a", "date": "2020-03-01", "city": "X",
                       "text": "the vaccine works well"})
    corpus.write_text(good + "\nnot json at all\n")
    rc = main(["clean", "--in", str(corpus), "--out", str(tmp_path / "c.jsonl")])
    assert rc == 1


def test_clean_tolerates_rare_malformation(tmp_path):
    corpus = tmp_path / "raw.jsonl"
    good = json.dumps({"id": "a", "date": "2020-03-01", "city": "X",
                       "text": "the vaccine works well"})
    corpus.write_text("\n".join([good] * 150 + ["not json"]) + "\n")
    rc = main(["clean", "--in", str(corpus), "--out", str(tmp_path / "c.jsonl")])
    assert rc == 0


# ---------------------------------------------------------------------------
# score


def test_score_table_fixture(tmp_path, fixtures_dir):
    out = tmp_path / "scored.csv"
    rc = main(["score", "--in", f"{fixtures_dir}/toronto_feb24.jsonl", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 6  # header + 5 posts
    header = lines[0].split(",")
    assert header[:7] == ["id", "date", "city", "negative", "neutral", "positive", "compound"]
    assert len(header) == 17
    # lexicon-miss rows score exactly neutral
    row1 = lines[1].split(",")
    assert row1[3:7] == ["0.0", "1.0", "0.0", "0.0"]


# ---------------------------------------------------------------------------
# aggregate + heatmap


def scored_setup(tmp_path, fixtures_dir):
    cleaned = tmp_path / "cleaned.jsonl"
    scored = tmp_path / "scored.csv"
    assert main(["clean", "--in", f"{fixtures_dir}/toronto_feb24.jsonl",
                 "--out", str(cleaned)]) == 0
    assert main(["score", "--in", str(cleaned), "--out", str(scored)]) == 0
    return cleaned, scored


def test_aggregate_and_heatmap(tmp_path, fixtures_dir):
    cleaned, scored = scored_setup(tmp_path, fixtures_dir)
    series_csv = tmp_path / "series.csv"
    rc = main(["aggregate", "--scored", str(scored), "--corpus", str(cleaned),
               "--out", str(series_csv)])
    assert rc == 0
    content = series_csv.read_text().splitlines()
    assert content[0] == "date,city,feature,value"
    assert any(",Toronto,compound_mean," in line for line in content[1:])
    assert any(",Toronto,like_total," in line for line in content[1:])

    out_dir = tmp_path / "hm"
    rc = main(["heatmap", "--series", str(series_csv), "--feature", "tweet_count",
               "--out-dir", str(out_dir)])
    assert rc == 0
    csv_lines = (out_dir / "heatmap_tweet_count.csv").read_text().splitlines()
    assert len(csv_lines) == 2  # header + 1 city
    assert (out_dir / "heatmap_tweet_count.svg").read_text().startswith("<svg")


def test_heatmap_two_city_fixture(tmp_path):
    series_csv = tmp_path / "series.csv"
    series_csv.write_text(
        "date,city,feature,value\n"
        "2020-03-01,A,compound_mean,0.2\n"
        "2020-03-02,A,compound_mean,-0.1\n"
        "2020-03-01,B,compound_mean,0.5\n"
        "2020-03-02,B,compound_mean,0.0\n"
    )
    out_dir = tmp_path / "hm"
    rc = main(["heatmap", "--series", str(series_csv), "--feature", "compound_mean",
               "--out-dir", str(out_dir)])
    assert rc == 0
    lines = (out_dir / "heatmap_compound_mean.csv").read_text().splitlines()
    assert len(lines) == 3
    assert lines[1].startswith("A,") and lines[2].startswith("B,")


def test_aggregate_keyword_needs_corpus(tmp_path, fixtures_dir):
    _, scored = scored_setup(tmp_path, fixtures_dir)
    rc = main(["aggregate", "--scored", str(scored), "--keyword", "flight",
               "--out", str(tmp_path / "s.csv")])
    assert rc == 2


def test_aggregate_keyword_filters(tmp_path, fixtures_dir):
    cleaned, scored = scored_setup(tmp_path, fixtures_dir)
    series_csv = tmp_path / "series.csv"
    rc = main(["aggregate", "--scored", str(scored), "--corpus", str(cleaned),
               "--keyword", "flight", "--features", "tweet_count",
               "--out", str(series_csv)])
    assert rc == 0
    rows = [l for l in series_csv.read_text().splitlines()[1:] if l]
    # two fixture posts mention flights
    assert len(rows) == 1
    assert rows[0].endswith("2.0")


def test_aggregate_periods_summary(tmp_path, fixtures_dir):
    cleaned, scored = scored_setup(tmp_path, fixtures_dir)
    periods = tmp_path / "periods.ini"
    periods.write_text("[DEFAULT]\nperiod1 = 2020-02-01/2020-02-24\n")
    period_out = tmp_path / "periods.csv"
    rc = main(["aggregate", "--scored", str(scored), "--out", str(tmp_path / "s.csv"),
               "--periods", str(periods), "--period-out", str(period_out)])
    assert rc == 0
    lines = period_out.read_text().splitlines()
    assert lines[0] == "city,period,n_tweets,mean,sd"
    assert any(line.startswith("Toronto,period1,5,") for line in lines)


# ---------------------------------------------------------------------------
# synth + ccm + gridsearch


def test_synth_ccm_recovers_ground_truth(tmp_path):
    series_csv = tmp_path / "synth.csv"
    rc = main(["synth", "--mode", "coupled", "--coupling-yx", "0.3",
               "--growth-y", "3.82", "--length", "500", "--seed", "5",
               "--out", str(series_csv)])
    assert rc == 0
    out_dir = tmp_path / "ccm"
    rc = main(["ccm", "--series", str(series_csv), "--city", "unit00",
               "--input-feature", "x", "--target-feature", "y",
               "--out-dir", str(out_dir), "--seed", "7"])
    assert rc == 0
    verdict = json.loads((out_dir / "ccm_verdict.json").read_text())
    assert verdict["classification"] == "X_causes_Y"
    curves = (out_dir / "ccm_curves.csv").read_text().splitlines()
    assert curves[0] == "direction,tau,rho"
    assert sum(1 for l in curves if l.startswith("x->y,")) == 61


def test_synth_ar1_mode(tmp_path):
    series_csv = tmp_path / "ar1.csv"
    rc = main(["synth", "--mode", "ar1", "--phi", "0.5", "--length", "100",
               "--units", "2", "--seed", "1", "--out", str(series_csv)])
    assert rc == 0
    rows = series_csv.read_text().splitlines()
    assert len(rows) == 1 + 100 * 2 * 2


def test_gridsearch_tiny_grid_winner_is_that_cell(tmp_path):
    panel = tmp_path / "panel.csv"
    assert main(["synth", "--mode", "coupled", "--coupling-yx", "0.3",
                 "--length", "300", "--units", "4", "--seed", "5",
                 "--out", str(panel)]) == 0
    out_dir = tmp_path / "gs"
    rc = main(["gridsearch", "--panel", str(panel), "--input-feature", "x",
               "--target-feature", "y", "--grid", "tiny",
               "--out-dir", str(out_dir), "--seed", "3"])
    assert rc == 0
    winner = json.loads((out_dir / "gridsearch_winner.json").read_text())
    assert winner["winner_index"] == 0
    assert winner["size"] == 100
    cells = (out_dir / "gridsearch_cells.csv").read_text().splitlines()
    assert len(cells) == 1 + 4  # header + one row per fold


# ---------------------------------------------------------------------------
# composition and reproducibility


def test_pipeline_equals_staged_composition(tmp_path, fixtures_dir):
    staged = tmp_path / "staged"
    staged.mkdir()
    cleaned = staged / "cleaned.jsonl"
    scored = staged / "scored.csv"
    series_csv = staged / "series.csv"
    assert main(["clean", "--in", f"{fixtures_dir}/toronto_feb24.jsonl",
                 "--out", str(cleaned)]) == 0
    assert main(["score", "--in", str(cleaned), "--out", str(scored)]) == 0
    assert main(["aggregate", "--scored", str(scored), "--corpus", str(cleaned),
                 "--out", str(series_csv)]) == 0

    oneshot = tmp_path / "oneshot"
    assert main(["pipeline", "--in", f"{fixtures_dir}/toronto_feb24.jsonl",
                 "--out-dir", str(oneshot)]) == 0
    assert (oneshot / "cleaned.jsonl").read_bytes() == cleaned.read_bytes()
    assert (oneshot / "scored.csv").read_bytes() == scored.read_bytes()
    assert (oneshot / "series.csv").read_bytes() == series_csv.read_bytes()


def test_byte_identical_reruns(tmp_path, fixtures_dir):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for out_dir in (a, b):
        assert main(["pipeline", "--in", f"{fixtures_dir}/toronto_feb24.jsonl",
                     "--out-dir", str(out_dir)]) == 0
    for name in ("cleaned.jsonl", "scored.csv", "series.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_seed_resolution_from_env(tmp_path, monkeypatch, capsys):
    series_csv = tmp_path / "synth.csv"
    monkeypatch.setenv("ECHOSENT_RUN_SEED", "99")
    rc = main(["synth", "--mode", "ar1", "--length", "50", "--out", str(series_csv)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "run.seed=99" in out


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[run]\nseed = 7\nlength = 64\n")
    series_csv = tmp_path / "synth.csv"
    rc = main(["synth", "--mode", "ar1", "--config", str(cfg), "--out", str(series_csv)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "run.seed=7" in out and "run.length=64" in out
    rows = series_csv.read_text().splitlines()
    assert len(rows) == 1 + 64 * 2


def test_flag_overrides_config(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[run]\nseed = 7\n")
    rc = main(["synth", "--mode", "ar1", "--length", "50", "--config", str(cfg),
               "--seed", "11", "--out", str(tmp_path / "s.csv")])
    assert rc == 0
    assert "run.seed=11" in capsys.readouterr().out


def test_unknown_errors_exit_2(tmp_path):
    rc = main(["score", "--in", "/nonexistent.jsonl", "--out", str(tmp_path / "s.csv")])
    assert rc == 2

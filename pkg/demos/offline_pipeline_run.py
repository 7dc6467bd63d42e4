"""Run the whole pipeline offline against the shipped mock transcripts.

The test fixture bundles prompts and responses for two small mock models
over two domains, plus recorded chat and search transcripts, so the full
ingest / extract / retrieve / verify / score / analyze chain runs without
network access. Running the script a second time against the same
directory resumes instantly with zero backend calls.

    python3 demos/offline_pipeline_run.py [run_dir]
"""

from __future__ import annotations

import sys
import tempfile
from pathlib import Path

from facteval.pipeline import PipelineConfig, run_pipeline

FIXTURE = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "e2e"


def main() -> None:
    if len(sys.argv) > 1:
        run_dir = Path(sys.argv[1])
    else:
        run_dir = Path(tempfile.mkdtemp(prefix="facteval-demo-")) / "run"
    config = PipelineConfig(
        run_dir=run_dir,
        prompts_path=FIXTURE / "prompts.jsonl",
        responses_path=FIXTURE / "responses.jsonl",
        mock_llm=FIXTURE / "llm_transcript.json",
        mock_search=FIXTURE / "search_transcript.json",
    )

    print(f"first pass over {run_dir}:")
    run_pipeline(config)

    print("\nsecond pass resumes from the finished stage files:")
    run_pipeline(config)

    print("\n" + (run_dir / "leaderboard.txt").read_text(encoding="utf-8"))
    print(f"stage files live in {run_dir}")


if __name__ == "__main__":
    main()

import json
import os
import time
from typing import Any, Dict, List, Optional


class RunLogger:
    """Journal of CLI runs, one JSON line each.

    A line records the command, the input it read, the exit code and the
    first line of what the command printed (the invariant it computed):
    {"ts": ..., "run": {"command": "d3", "input": "pair.json", "exit_code": 0, "result": "1/2", ...}}
    """

    def __init__(self, path: str = "data/runs.jsonl", max_hours: int = 24, carry_hours: int = 3):
        self.path = path
        self.max_hours = max_hours
        self.carry_hours = carry_hours
        folder = os.path.dirname(self.path)
        if folder:
            os.makedirs(folder, exist_ok=True)

    def _runs(self) -> List[Dict]:
        if not os.path.exists(self.path):
            return []
        runs: List[Dict] = []
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                try:
                    runs.append(json.loads(line))
                except json.JSONDecodeError:
                    continue
        return runs

    def rollover_if_needed(self, now: Optional[float] = None) -> None:
        """Move the journal to <path>.archive once its first run is max_hours old.

        Runs from the last carry_hours stay in the fresh journal.
        """
        runs = self._runs()
        now = time.time() if now is None else now
        if not runs or now - runs[0].get("ts", now) < self.max_hours * 3600:
            return
        with open(f"{self.path}.archive", "a", encoding="utf-8") as fh:
            fh.writelines(json.dumps(r) + "\n" for r in runs)
        cutoff = now - self.carry_hours * 3600
        with open(self.path, "w", encoding="utf-8") as fh:
            fh.writelines(json.dumps(r) + "\n" for r in runs if r.get("ts", 0) >= cutoff)

    def log_run(
        self,
        command: str,
        input_path: Optional[str],
        exit_code: int,
        seconds: float,
        result: Optional[str] = None,
    ) -> None:
        self.rollover_if_needed()
        run: Dict[str, Any] = {"command": command, "input": input_path, "exit_code": exit_code}
        if result:
            run["result"] = result
        run["seconds"] = round(seconds, 6)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps({"ts": time.time(), "run": run}) + "\n")

import json
from typing import Any, Dict, Optional

import pandas as pd

from comparative_alloc.utils.misc import PROVENANCE_PREFIX
from comparative_alloc.utils.utils import log


def write_csv(frame: pd.DataFrame, path: str, digest: Optional[str] = None) -> str:
    """CSV with a provenance comment line in front. Readers skip it with comment handling or `load_channel_trace`."""
    with open(path, "w", newline="") as f:
        if digest is not None:
            f.write(f"{PROVENANCE_PREFIX}{digest}\n")
        frame.to_csv(f, index=False)

    log.debug("Saved %d rows to %s", len(frame), path)
    return path


def write_json(data: Dict[str, Any], path: str, digest: Optional[str] = None) -> str:
    if digest is not None:
        data = dict(data, config_digest=digest)

    with open(path, "w") as f:
        json.dump(data, f, indent=4, sort_keys=True)
        f.write("\n")

    log.debug("Saved %s", path)
    return path


def read_csv(path: str) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")

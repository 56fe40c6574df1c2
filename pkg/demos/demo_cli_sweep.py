"""
Reproducible sweeps from the command line
=========================================

The CLI writes CSV with 15 significant digits. Here a sweep over the
Fig. 1 family at z = -5 is run in-process and printed.
"""

import json
import os
import sys
import tempfile

from sis_lab import cli

config = {
    "state_family": "sis",
    "fixed_params": {"z": "-5", "v": "-x"},
    "sweep_var": "x",
    "range": [1, 8, 8],
    "outputs": ["var_q", "var_Ysa", "mandel_q"],
}
with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
    json.dump(config, fh)

# same as: sis-lab sweep --config <file>
status = cli.main(["sweep", "--config", fh.name], out=sys.stdout)
os.unlink(fh.name)
print("exit status", status)

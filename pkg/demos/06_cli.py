"""Driving the command line from Python; each call mirrors a shell invocation."""

# %%
import json
import os
import tempfile

from ccweights.cli import run
from ccweights.groups import klein_four
from ccweights.io import format_group

# %% Write a group file, then ask for its cohomology and weight classes.
tmp = tempfile.mkdtemp()
path = os.path.join(tmp, "v4.group")
with open(path, "w") as fh:
    fh.write(format_group(klein_four()))

for argv in (["h2", "--group", path], ["classify", "--group", path]):
    code, report, _ = run(argv)
    print("$ ccweights", " ".join(argv), "->", code)
    print(json.dumps(report["payload"], default=str)[:300])

# %% Bad input is a diagnostic with exit status 1.
bad = os.path.join(tmp, "bad.group")
with open(bad, "w") as fh:
    fh.write("2\n0 1\n1 x\n")
code, report, _ = run(["h2", "--group", bad])
print(code, report["payload"])

"""Drive the experiment harness programmatically and inspect its CSV.

The same machinery backs the `pintconv` command line: a config (bundled
or file) expands into experiments, runs, and lands in a deterministic
CSV whose rows the plotkit scripts consume.
"""

from pintconv.harness import load_config, rows_to_csv, run_experiments

experiments = load_config("fig4a", overrides={"kmax": "5"})
print(f"fig4a expands to {len(experiments)} experiments:")
for exp in experiments:
    print(f"  [{exp.name}] method={exp.method} relax={exp.relax} variant={exp.variant()}")

rows, status = run_experiments(experiments)
print(f"\nexit status {status}, {len(rows)} rows; first lines of the CSV:\n")
for line in rows_to_csv(rows).splitlines()[:12]:
    print(line)

print("\nequivalent shell command:")
print("  pintconv analyze --config fig4a --kmax 5 --out fig4a.csv")

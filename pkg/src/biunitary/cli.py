"""Command-line entry point.

Subcommands:
    compute <n>                 arithmetic functions of a single integer
    search <lo> <hi>            exhaustive scan, optional checkpoint/output
    lemmas                      run all lemma verifiers
    verify-table <summary.json> compare a summary against the reference table
    named-sets                  biunitary perfect / unitary superperfect checks

Bounds accept decimal or 2^k notation.  Exit codes: 0 success/match,
1 verified mismatch or lemma failure, 2 usage or I/O error.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import arith, lemmas, report, search


class BoundType(click.ParamType):
    name = "bound"

    def convert(self, value, param, ctx):
        if isinstance(value, int):
            return value
        text = value.strip()
        try:
            if "^" in text:
                base, exp = text.split("^", 1)
                return int(base) ** int(exp)
            return int(text)
        except ValueError:
            self.fail(f"{value!r} is not an integer or base^exp expression", param, ctx)


BOUND = BoundType()


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("BUSP_WORKERS", "1")))
    except ValueError:
        return 1


@click.group()
def main():
    """Biunitary divisor sums and the (2,k)-multiperfect search."""


@main.command()
@click.argument("n", type=BOUND)
def compute(n):
    """Print the arithmetic functions of N."""
    if n < 1:
        raise click.UsageError("n must be >= 1")
    try:
        f = arith.factorize(n)
        s1 = arith.sigma_bu(f)
        s2 = arith.sigma_bu_of(s1)
        factor_str = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in f) or "1"
        click.echo(f"n          = {n} = {factor_str}")
        click.echo(f"omega(n)   = {arith.omega(f)}")
        click.echo(f"sigma(n)   = {arith.sigma_classic(f)}")
        click.echo(f"sigma*(n)  = {arith.sigma_unitary(f)}")
        click.echo(f"sigma**(n) = {s1}")
        click.echo(f"sigma**(sigma**(n)) = {s2}")
        if s2 % n == 0:
            click.echo(f"n divides sigma**(sigma**(n)): yes, k = {s2 // n}")
        else:
            click.echo("n divides sigma**(sigma**(n)): no")
    except arith.Overflow64Error as exc:
        raise click.ClickException(str(exc))


@main.command(name="search")
@click.argument("lo", type=BOUND)
@click.argument("hi", type=BOUND)
@click.option("--segment-size", type=BOUND, default=search.DEFAULT_SEGMENT_SIZE, show_default=True)
@click.option("--workers", type=int, default=None, help="worker processes [default: $BUSP_WORKERS or 1]")
@click.option("--checkpoint", "checkpoint_path", type=click.Path(), default=None, help="checkpoint file to write/resume")
@click.option("--out", "out_path", type=click.Path(), default=None, help="output file")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="json", show_default=True)
def search_cmd(lo, hi, segment_size, workers, checkpoint_path, out_path, fmt):
    """Scan [LO, HI] for all n dividing sigma**(sigma**(n))."""
    if lo < 1:
        raise click.UsageError("lo must be >= 1")
    if lo > hi:
        raise click.UsageError(f"empty interval: lo={lo} > hi={hi}")
    if hi > search.MAX_HI:
        raise click.UsageError("hi must be <= 2^40")
    if workers is None:
        workers = _default_workers()
    try:
        records = search.search_records(
            lo, hi, segment_size=segment_size, workers=workers,
            checkpoint_path=checkpoint_path,
        )
    except search.CheckpointError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    summary = report.aggregate(records, (lo, hi))
    if out_path:
        report.emit(summary, fmt, out_path)
        click.echo(f"wrote {out_path}", err=True)
    click.echo(f"interval [{lo}, {hi}]: {summary.total} hits")
    for k, members in summary.per_k.items():
        shown = ", ".join(map(str, members[:8]))
        if len(members) > 8:
            shown += ", ..."
        click.echo(f"  k={k:<3d} count={len(members):<4d} {shown}")


@main.command(name="lemmas")
@click.option("--parity-max", type=BOUND, default=10**6, show_default=True)
@click.option("--ratio-pmax", type=int, default=97, show_default=True)
@click.option("--ratio-emax", type=int, default=30, show_default=True)
@click.option("--ratio-mmax", type=int, default=5, show_default=True)
@click.option("--bang-amax", type=int, default=12, show_default=True)
@click.option("--bang-nmax", type=int, default=18, show_default=True)
@click.option("--class-pmax", type=int, default=200, show_default=True)
@click.option("--class-emax", type=int, default=6, show_default=True)
def lemmas_cmd(parity_max, ratio_pmax, ratio_emax, ratio_mmax,
               bang_amax, bang_nmax, class_pmax, class_emax):
    """Run all lemma verifiers; exit 0 iff every report passes."""
    reports = [
        lemmas.check_parity(parity_max),
        lemmas.check_ratio_bounds(ratio_pmax, ratio_emax, ratio_mmax),
        lemmas.check_bang(bang_amax, bang_nmax),
        lemmas.check_classification(class_pmax, class_emax),
        lemmas.check_sbu_pow2_prime_power(40),
    ]
    ok = True
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        click.echo(f"{status}  {rep.lemma_id.value:<22s} {rep.domain_descriptor}")
        if not rep.passed:
            ok = False
            for c in rep.counterexamples[:10]:
                click.echo(f"      counterexample: {c}")
    sys.exit(0 if ok else 1)


@main.command(name="verify-table")
@click.argument("summary_path", type=click.Path(exists=True))
@click.option("--json-out", "json_out", type=click.Path(), default=None, help="write the machine-readable comparison")
def verify_table(summary_path, json_out):
    """Compare a search summary JSON against the reference table."""
    try:
        summary = report.parse_summary(summary_path)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        click.echo(f"error: cannot parse {summary_path}: {exc}", err=True)
        sys.exit(2)
    cmp = report.compare_to_paper(summary)
    if cmp.mode == "exemplar":
        click.echo("note: interval is not [1, 2^30]; exemplar-only comparison")
    click.echo(f"mode={cmp.mode} checks={cmp.checked} matched={cmp.matched}")
    for m in cmp.mismatches:
        click.echo(f"  mismatch: {m}")
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            json.dump(cmp.to_dict(), fh, indent=2)
            fh.write("\n")
    sys.exit(0 if cmp.matched else 1)


@main.command(name="named-sets")
def named_sets():
    """Verify the biunitary perfect and unitary superperfect catalogs."""
    rep = search.verify_named_sets()
    status = "PASS" if rep.passed else "FAIL"
    click.echo(f"{status}  {rep.domain_descriptor}")
    click.echo(f"  biunitary perfect:      {rep.notes['biunitary_perfect']}")
    click.echo(f"  unitary superperfect:   {rep.notes['unitary_superperfect']}")
    sys.exit(0 if rep.passed else 1)


if __name__ == "__main__":
    main()

import csv
import io
import os
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
MANAGE = [sys.executable, str(ROOT / 'manage.py'), 'moebius']


def moebius(*args):
    return subprocess.run(MANAGE + list(args), cwd=ROOT, capture_output=True, text=True)


def test_integration():
    # 1. Table up to 6
    result = moebius('table', '--limit', '6')
    assert result.returncode == 0, result.stderr
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert len(rows) == 6
    assert rows[-1]['M'] == '-1'
    assert float(rows[-1]['g']) == 2 / 15
    print("✓ Table for x <= 6 matches M(6) = -1 and g(6) = 2/15")

    # 2. Every identity and bound
    result = moebius('verify', '--limit', '2000')
    assert result.returncode == 0, result.stderr
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert all(row['passed'] == 'true' for row in rows)
    print(f"✓ Verify passed {len(rows)} checks up to 2000")

    # 3. Same bytes on a second run, to a file
    with tempfile.TemporaryDirectory() as directory:
        path = os.path.join(directory, 'verify.csv')
        again = moebius('verify', '--limit', '2000', '--out', path)
        assert again.returncode == 0, again.stderr
        assert Path(path).read_text(encoding='utf-8') == result.stdout
    print("✓ Verify output is reproducible")

    # 4. Convergence scan
    result = moebius('converge', '--limit', '100000', '--delta', '0.5')
    assert result.returncode == 0, result.stderr
    footer = result.stdout.splitlines()[-1]
    assert footer.startswith('G=')
    print(f"✓ Convergence scan finished: {footer}")

    # 5. Sub-linear M
    result = moebius('fast', '--limit', '1000000')
    assert result.returncode == 0, result.stderr
    (row,) = csv.DictReader(io.StringIO(result.stdout))
    assert row['M'] == '212'
    print("✓ M(10^6) = 212 from the recursion")

    # 6. Usage errors
    assert moebius('converge', '--limit', '100').returncode == 2
    assert moebius('table', '--limit', '0').returncode == 2
    print("✓ Bad arguments exit with status 2")


if __name__ == "__main__":
    test_integration()

import csv
from typing import List, Sequence
from ..logger import LoggerManager
from ..models import dumps_report, sanitize


def write_json(report, path: str) -> str:
    """Writes a report as JSON.

    Args:
        report: Report.
        path: Output path.

    Returns:
        Written path.
    """
    with open(path, 'w', encoding='utf-8') as file:
        file.write(dumps_report(report) + '\n')
    LoggerManager.get_logger('ReportWriter').info(f'Wrote report to {path}')
    return path


def write_csv(rows: List[dict], fields: Sequence[str], path: str) -> str:
    """Writes table rows as CSV with a header line.

    Args:
        rows: Table rows.
        fields: Column names, in order.
        path: Output path.

    Returns:
        Written path.
    """
    with open(path, 'w', encoding='utf-8', newline='') as file:
        writer = csv.DictWriter(file, fieldnames=list(fields), extrasaction='ignore')
        writer.writeheader()
        writer.writerows(sanitize(rows))
    LoggerManager.get_logger('ReportWriter').info(f'Wrote {len(rows)} rows to {path}')
    return path

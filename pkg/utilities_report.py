# ///////////////////////////////////////////////////////////////////////
#
#                           UTILITIES REPORT
#   Tables of every computation assembled with pandas and serialized into
#   the line-oriented report format:
#       # key = value            header, one line per configuration field
#       s | m+n@ | dim | labels  Ext tables
#       r | m+n@|s|f | dim | labels  spectral sequence pages
#
# ///////////////////////////////////////////////////////////////////////

from utilities_grading import DEGREE_PATTERN, TRI_DEGREE_PATTERN, format_degree, format_tri_degree, parse_degree, parse_tri_degree
from utilities_cobar import ExtTable
from utilities_exceptions import ConfigError, raise_engine_error, raise_unknown_error
from global_parameters import *
import pandas as pd
import logging as log
import os

logger_report = log.getLogger(LOGGER_REPORT_KEY)

SEPARATOR = ' | '
EXT_COLUMNS = ['s', 'degree', 'dim', 'labels']
PAGE_COLUMNS = ['r', 'tri_degree', 'dim', 'labels']

# -----------------------------------------------------------------------
#                               TABLES
# -----------------------------------------------------------------------

def ext_frame(table: ExtTable) -> pd.DataFrame:
    rows = []
    for entry in table.sorted_entries():
        key = entry.tri_degree
        rows.append({'s': key.s, 'm': key.total.m, 'n': key.total.n, 'f': key.f,
                     'degree': format_tri_degree(key) if table.filtered else format_degree(key.total),
                     'dim': entry.dim, 'labels': tuple(entry.labels)})
    frame = pd.DataFrame(rows, columns=['s', 'm', 'n', 'f', 'degree', 'dim', 'labels'])
    return frame.sort_values(['s', 'm', 'n', 'f'], kind='stable').reset_index(drop=True)

def page_frame(pages: dict) -> pd.DataFrame:
    """pages: r -> SSPage."""
    rows = []
    for r, page in sorted(pages.items()):
        for key, dim in page.dims.items():
            rows.append({'r': r, 's': key.s, 'm': key.total.m, 'n': key.total.n, 'f': key.f,
                         'tri_degree': format_tri_degree(key), 'dim': dim, 'labels': tuple(page.labels.get(key, ()))})
    frame = pd.DataFrame(rows, columns=['r', 's', 'm', 'n', 'f', 'tri_degree', 'dim', 'labels'])
    return frame.sort_values(['r', 's', 'm', 'n', 'f'], kind='stable').reset_index(drop=True)

def dimension_frame(rows: list) -> pd.DataFrame:
    """rows of (degree, labels) into m, n, degree, dim, labels."""
    frame = pd.DataFrame([{'m': d.m, 'n': d.n, 'degree': format_degree(d), 'dim': len(labels), 'labels': tuple(labels)} for d, labels in rows],
                         columns=['m', 'n', 'degree', 'dim', 'labels'])
    return frame.sort_values(['m', 'n'], kind='stable').reset_index(drop=True)

def dimension_grid(frame: pd.DataFrame) -> pd.DataFrame:
    """Dimensions pivoted with n down the rows (largest first) and m across."""
    if frame.empty:
        return pd.DataFrame()
    grid = frame.pivot_table(index='n', columns='m', values='dim', aggfunc='sum', fill_value=0)
    return grid.sort_index(ascending=False)

# -----------------------------------------------------------------------
#                            SERIALIZATION
# -----------------------------------------------------------------------

def _labels_text(labels) -> str:
    return ' '.join(labels)

def ext_lines(frame: pd.DataFrame) -> list:
    return [SEPARATOR.join([str(row.s), row.degree, str(row.dim), _labels_text(row.labels)]) for row in frame.itertuples()]

def page_lines(frame: pd.DataFrame) -> list:
    return [SEPARATOR.join([str(row.r), row.tri_degree, str(row.dim), _labels_text(row.labels)]) for row in frame.itertuples()]

def frame_lines(frame: pd.DataFrame, columns: list) -> list:
    """Generic rows: the listed columns joined by the separator, tuples written as labels."""
    lines = []
    for record in frame[columns].to_dict('records'):
        lines.append(SEPARATOR.join(_labels_text(value) if isinstance(value, tuple) else str(value) for value in record.values()))
    return lines

def serialize(header: list, body: list) -> str:
    return '\n'.join(list(header) + list(body)) + '\n'

def write_report(out_dir: str, name: str, text: str, extension: str = REPORT_EXTENSION) -> str:
    path = os.path.join(out_dir, f"{name}{extension}")
    try:
        os.makedirs(out_dir, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='\n') as file:
            file.write(text)
    except OSError as os_error:
        raise_unknown_error(os_error)
    logger_report.info(f"[SUCCESS] Report written to {path} ({text.count(chr(10))} lines)")
    return path

# -----------------------------------------------------------------------
#                               PARSING
# -----------------------------------------------------------------------

def parse_header(text: str) -> dict:
    header = {}
    for line in text.splitlines():
        if line.startswith('# ') and ' = ' in line:
            key, value = line[2:].split(' = ', 1)
            header[key.strip()] = value
    return header

def _body(text: str) -> list:
    return [line for line in text.splitlines() if line.strip() and not line.startswith('#')]

def _fields(line: str, count: int) -> list:
    parts = line.split(SEPARATOR, count - 1)
    if len(parts) == count - 1 and parts[-1].endswith(' |'):
        parts[-1] = parts[-1][:-2]
        parts.append('')
    if len(parts) != count:
        raise_engine_error(ConfigError(f"Malformed report line {line!r}"))
    return parts

def _labels(text: str) -> tuple:
    return tuple(text.split()) if text.strip() else ()

def parse_ext_report(text: str) -> tuple:
    """(header dict, frame with s, degree, f, dim, labels)."""
    rows = []
    for line in _body(text):
        s, degree, dim, labels = _fields(line, 4)
        if DEGREE_PATTERN.match(degree):
            f = 0
            parse_degree(degree)
        elif TRI_DEGREE_PATTERN.match(degree):
            f = parse_tri_degree(degree).f
        else:
            raise_engine_error(ConfigError(f"Malformed degree {degree!r} in report line {line!r}"))
        rows.append({'s': int(s), 'degree': degree, 'f': f, 'dim': int(dim), 'labels': _labels(labels)})
    return parse_header(text), pd.DataFrame(rows, columns=['s', 'degree', 'f', 'dim', 'labels'])

def parse_page_report(text: str) -> tuple:
    """(header dict, frame with r, tri_degree, s, f, dim, labels)."""
    rows = []
    for line in _body(text):
        r, tri, dim, labels = _fields(line, 4)
        key = parse_tri_degree(tri)
        rows.append({'r': int(r), 'tri_degree': tri, 's': key.s, 'f': key.f, 'dim': int(dim), 'labels': _labels(labels)})
    return parse_header(text), pd.DataFrame(rows, columns=['r', 'tri_degree', 's', 'f', 'dim', 'labels'])

# ///////////////////////////////////////////////////////////////////////
#
#                           UTILITIES CHARTS
#   Charts using Plotly: one dot per basis element placed at its degree
#   (integer degree m across, spoke weight n up), differentials drawn as
#   line segments, exported as static SVG.
#
# ///////////////////////////////////////////////////////////////////////

import re
from dataclasses import dataclass, field
import plotly.graph_objects as go
from utilities_grading import SpokeDegree, TriDegree, DegreeWindow, format_degree, format_tri_degree
from utilities_exceptions import ConsistencyError, raise_engine_error
from global_parameters import CHART_FORMAT, LOGGER_CHARTS_KEY
import logging as log

logger_charts = log.getLogger(LOGGER_CHARTS_KEY)

# -----------------------------------------------------------------------
#                          GLOBAL PARAMETERS
# -----------------------------------------------------------------------

CELL = 28
MARGIN = 48
DOT_SIZE = 6
DOT_SPACING = 0.2
DOTS_PER_ROW = 4
ARROW_COLORS = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#8c564b', '#e377c2']
CHART_TEMPLATE = 'plotly_white'
CLASSES_TRACE = 'classes'

# plotly.js names its clip paths after a random per-figure id
_CLIP_ID = re.compile(r'clip([0-9a-z]+?)(xy|x|y)plot')
STABLE_CLIP_ID = 'chart'

# -----------------------------------------------------------------------
#                           CHART DOCUMENTS
# -----------------------------------------------------------------------

@dataclass
class ChartDoc:
    title: str
    window: DegreeWindow
    dots: list = field(default_factory=list)
    arrows: list = field(default_factory=list)
    x_label: str = 'm (integer degree)'
    y_label: str = 'n (spoke weight)'

    def add_dot(self, key, label: str):
        self.dots.append((key, label))

    def add_arrow(self, source: TriDegree, target: TriDegree, r: int):
        self.arrows.append((source, target, r))

def _position(key) -> SpokeDegree:
    return key.total if isinstance(key, TriDegree) else key

def _key_text(key) -> str:
    return format_tri_degree(key) if isinstance(key, TriDegree) else format_degree(key)

def chart_from_dimensions(title: str, window: DegreeWindow, rows: list) -> ChartDoc:
    """rows of (degree, labels)."""
    doc = ChartDoc(title, window)
    for d, labels in rows:
        for label in labels:
            doc.add_dot(d, label)
    return doc

def chart_from_page(title: str, window: DegreeWindow, page) -> ChartDoc:
    doc = ChartDoc(title, window)
    for key in sorted(page.dims, key=lambda t: (t.total, t.s, t.f)):
        labels = page.labels.get(key, ())
        for i in range(page.dims[key]):
            doc.add_dot(key, labels[i] if i < len(labels) else '')
    for source, (_, rank_) in sorted(page.differentials.items(), key=lambda item: (item[0].total, item[0].s, item[0].f)):
        target = TriDegree(source.total - SpokeDegree(1, 0), source.s + 1, source.f + page.r)
        if rank_ and target in page.dims:
            doc.add_arrow(source, target, page.r)
    return doc

# -----------------------------------------------------------------------
#                                FIGURES
# -----------------------------------------------------------------------

def dot_positions(doc: ChartDoc) -> tuple:
    """Stacks the dots of one degree inside its cell; returns (points, first point of every key)."""
    placed = {}
    centers = {}
    points = []
    for key, label in doc.dots:
        d = _position(key)
        if not doc.window.contains(d):
            continue
        k = placed.get(d, 0)
        placed[d] = k + 1
        x = d.m + DOT_SPACING * (k % DOTS_PER_ROW - (DOTS_PER_ROW - 1) / 2)
        y = d.n + 0.3 - DOT_SPACING * (k // DOTS_PER_ROW)
        centers.setdefault(key, (x, y))
        points.append((x, y, f"{_key_text(key)} {label}".strip()))
    return points, centers

def chart_figure(doc: ChartDoc) -> go.Figure:
    w = doc.window
    points, centers = dot_positions(doc)

    fig = go.Figure()
    fig.add_trace(go.Scatter(x=[x for x, _, _ in points], y=[y for _, y, _ in points], text=[text for _, _, text in points],
                             mode='markers', name=CLASSES_TRACE, uid=CLASSES_TRACE, marker=dict(size=DOT_SIZE, color='#000')))

    segments = {}
    for source, target, r in doc.arrows:
        if source not in centers or target not in centers:
            raise_engine_error(ConsistencyError(f"Arrow d_{r} from {_key_text(source)} to {_key_text(target)} has a missing endpoint"))
        (x1, y1), (x2, y2) = centers[source], centers[target]
        xs, ys = segments.setdefault(r, ([], []))
        xs.extend([x1, x2, None])
        ys.extend([y1, y2, None])

    for r in sorted(segments):
        xs, ys = segments[r]
        color = ARROW_COLORS[(r - 1) % len(ARROW_COLORS)]
        fig.add_trace(go.Scatter(x=xs, y=ys, mode='lines', name=f"d_{r}", uid=f"d_{r}", line=dict(color=color, width=1.5)))

    fig.update_layout(
        title=doc.title,
        xaxis_title=doc.x_label,
        yaxis_title=doc.y_label,
        template=CHART_TEMPLATE,
        width=2 * MARGIN + (w.m_max - w.m_min + 1) * CELL,
        height=2 * MARGIN + (w.n_max - w.n_min + 1) * CELL,
        margin=dict(l=MARGIN, r=MARGIN, t=MARGIN, b=MARGIN),
        showlegend=bool(segments),
    )
    fig.update_xaxes(range=[w.m_min - 0.5, w.m_max + 0.5], dtick=1, zeroline=False)
    fig.update_yaxes(range=[w.n_min - 0.5, w.n_max + 0.5], dtick=1, zeroline=False)

    return fig

def emit_chart(doc: ChartDoc) -> str:
    """SVG text of the chart; the random plotly.js clip ids are replaced so equal inputs give equal bytes."""
    fig = chart_figure(doc)
    svg = fig.to_image(format=CHART_FORMAT).decode('utf-8')
    found = _CLIP_ID.search(svg)
    if found:
        svg = re.sub(rf"(clip|legend){found.group(1)}", rf"\g<1>{STABLE_CLIP_ID}", svg)
    logger_charts.info(f"[INFO] Chart {doc.title!r}: {len(doc.dots)} dots, {len(doc.arrows)} arrows")
    return svg

# -*- coding: utf8 -*-

"""
A log-log plot of Syncline curves, written as plain SVG: synchronization
accuracy ``1/tau`` across, estimation accuracy ``1/delta`` up, one polyline
per curve, with each curve's critical synchronization error and roof marked.
"""

import math
from xml.sax.saxutils import escape

from syncline.exceptions import DomainError

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<svg width="%(width)d" height="%(height)d" viewBox="0 0 %(width)d %(height)d" \
version="1.1" xmlns="http://www.w3.org/2000/svg">
<rect x="0" y="0" width="%(width)d" height="%(height)d" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

COLORS = ('#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b',
          '#e377c2')


def _decades(low, high):
    return range(int(math.floor(math.log10(low))),
                 int(math.ceil(math.log10(high))) + 1)


class LogLogPlot(object):
    """
    Collects drawing commands in data coordinates and maps them onto a fixed
    canvas when saved. Axis limits snap outwards to whole decades.
    """

    def __init__(self, width=640, height=420, margin=60):
        self.width = width
        self.height = height
        self.margin = margin
        self.min_x = self.max_x = self.min_y = self.max_y = None
        self.items = []

    def require(self, x, y):
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    def line(self, points, color='#000000', width=1.5, dash=None):
        points = [(x, y) for x, y in points
                  if 0 < x < math.inf and 0 < y < math.inf]
        for x, y in points:
            self.require(x, y)
        if points:
            self.items.append(('line', points, color, width, dash))

    def text(self, x, y, text, color='#444444'):
        self.items.append(('text', (x, y), text, color))

    def _limits(self):
        if self.min_x is None:
            return (1.0, 10.0, 1.0, 10.0)
        xs = _decades(self.min_x, self.max_x)
        ys = _decades(self.min_y, self.max_y)
        lo_x, hi_x = xs[0], xs[-1]
        lo_y, hi_y = ys[0], ys[-1]
        if hi_x == lo_x:
            hi_x += 1
        if hi_y == lo_y:
            hi_y += 1
        return (10.0 ** lo_x, 10.0 ** hi_x, 10.0 ** lo_y, 10.0 ** hi_y)

    def _mapper(self):
        x0, x1, y0, y1 = self._limits()
        inner_w = self.width - 2 * self.margin
        inner_h = self.height - 2 * self.margin
        lx0, lx1 = math.log10(x0), math.log10(x1)
        ly0, ly1 = math.log10(y0), math.log10(y1)

        def to_canvas(x, y):
            x = min(max(x, x0), x1)
            y = min(max(y, y0), y1)
            cx = self.margin + (math.log10(x) - lx0) / (lx1 - lx0) * inner_w
            cy = (self.height - self.margin -
                  (math.log10(y) - ly0) / (ly1 - ly0) * inner_h)
            return cx, cy
        return to_canvas, (x0, x1, y0, y1)

    def _axes(self, to_canvas, limits, x_label, y_label):
        x0, x1, y0, y1 = limits
        out = []
        for k in _decades(x0, x1):
            cx, _ = to_canvas(10.0 ** k, y0)
            _, top = to_canvas(10.0 ** k, y1)
            _, bottom = to_canvas(10.0 ** k, y0)
            out.append('<line x1="%f" y1="%f" x2="%f" y2="%f" '
                       'style="stroke:#dddddd;stroke-width:1"/>' %
                       (cx, top, cx, bottom))
            out.append('<text x="%f" y="%f" font-size="11" '
                       'font-family="sans-serif" text-anchor="middle">'
                       '1e%d</text>' % (cx, bottom + 16, k))
        for k in _decades(y0, y1):
            left, cy = to_canvas(x0, 10.0 ** k)
            right, _ = to_canvas(x1, 10.0 ** k)
            out.append('<line x1="%f" y1="%f" x2="%f" y2="%f" '
                       'style="stroke:#dddddd;stroke-width:1"/>' %
                       (left, cy, right, cy))
            out.append('<text x="%f" y="%f" font-size="11" '
                       'font-family="sans-serif" text-anchor="end">'
                       '1e%d</text>' % (left - 6, cy + 4, k))
        left, bottom = to_canvas(x0, y0)
        right, top = to_canvas(x1, y1)
        out.append('<rect x="%f" y="%f" width="%f" height="%f" '
                   'style="fill:none;stroke:#000000;stroke-width:1"/>' %
                   (left, top, right - left, bottom - top))
        out.append('<text x="%f" y="%f" font-size="12" '
                   'font-family="sans-serif" text-anchor="middle">%s</text>'
                   % ((left + right) / 2, self.height - 15, escape(x_label)))
        out.append('<text x="%f" y="%f" font-size="12" '
                   'font-family="sans-serif" text-anchor="middle" '
                   'transform="rotate(-90 %f %f)">%s</text>'
                   % (18, (top + bottom) / 2, 18, (top + bottom) / 2,
                      escape(y_label)))
        return out

    def render(self, x_label='', y_label=''):
        to_canvas, limits = self._mapper()
        out = [PREAMBLE % {'width': self.width, 'height': self.height}]
        out.extend(self._axes(to_canvas, limits, x_label, y_label))
        for item in self.items:
            if item[0] == 'line':
                _, points, color, width, dash = item
                style = 'fill:none;stroke:%s;stroke-width:%g' % (color, width)
                if dash:
                    style += ';stroke-dasharray:%s' % dash
                out.append('<polyline points="%s" style="%s"/>' % (
                    ' '.join('%f,%f' % to_canvas(x, y) for x, y in points),
                    style))
            else:
                _, (x, y), text, color = item
                cx, cy = to_canvas(x, y)
                out.append('<text x="%f" y="%f" fill="%s" font-size="11" '
                           'font-family="sans-serif">%s</text>' %
                           (cx + 4, cy - 4, color, escape(text)))
        out.append(POSTAMBLE)
        return '\n'.join(out)

    def save(self, filename, **kwargs):
        with open(filename, 'w') as f:
            f.write(self.render(**kwargs))


def syncline_plot(curves):
    """
    A LogLogPlot of ``curves`` (SynclineCurve instances): each curve as a
    polyline, a dashed horizontal line at its roof and a marker label at its
    critical synchronization error.
    """
    if not curves:
        raise DomainError('No curves to plot')
    plot = LogLogPlot()
    for n, curve in enumerate(curves):
        color = COLORS[n % len(COLORS)]
        points = [(s.sync_accuracy, s.est_accuracy) for s in curve.samples]
        plot.line(points, color)
        xs = [p[0] for p in points]
        if math.isfinite(curve.roof) and xs:
            plot.line([(min(xs), curve.roof), (max(xs), curve.roof)], color,
                      width=0.75, dash='4,3')
            plot.text(min(xs), curve.roof, '{} roof {:.3g} 1/m'.format(
                curve.label or '', curve.roof), color)
        if 0 < curve.tau_crit < math.inf:
            x = 1.0 / curve.tau_crit
            y = curve.roof / 2.0
            plot.line([(x, y / 3.0), (x, y * 3.0)], color, width=0.75)
            plot.text(x, y, 'tau_crit {:.3g} s'.format(curve.tau_crit), color)
    return plot


AXIS_LABELS = {
    'x_label': 'Synchronization accuracy 1/tau [1/s]',
    'y_label': 'Estimation accuracy 1/delta [1/m]',
}


def render_syncline_svg(curves):
    return syncline_plot(curves).render(**AXIS_LABELS)


def write_syncline_svg(curves, filename):
    syncline_plot(curves).save(filename, **AXIS_LABELS)

"""Default KPI catalog: the T-algorithm's eight success factors.

Display names follow the investment-grid column headers; each entry's
question is the prompt an analyst answers when ranking competitors in
that column.
"""

from __future__ import annotations

from .grid import Kpi, slugify

# (name, question) in canonical column order.
DEFAULT_KPI_CATALOG: tuple[tuple[str, str], ...] = (
    (
        "Appeals to Human Instinct",
        "Does your product appeal to human instincts and passions "
        "(procreation, security, belongingness or basic needs)?",
    ),
    (
        "Career Accelerant",
        "Is the company a top place to start a career, and if not, how to attract top talent?",
    ),
    ("Growth + Margins", "Has the company healthy growth and profit margins?"),
    (
        "Rundle",
        "Has the product potential to be wanted as part of a recurring-revenue bundle?",
    ),
    ("Vertical Integration", "Are you leveraging vertical integration?"),
    ("Benjamin Button Product", "Can it leverage software economies of scale?"),
    ("Visionary Storytelling", "Does it have a compelling storytelling that inspires?"),
    ("Likeability", "Is the leadership liked or disliked on social media?"),
)


def default_kpis() -> list[Kpi]:
    """The eight standard KPIs, positioned in canonical order."""
    return [
        Kpi(id=slugify(name), name=name, position=index)
        for index, (name, _) in enumerate(DEFAULT_KPI_CATALOG)
    ]

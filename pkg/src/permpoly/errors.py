"""Shared exception types."""


class BudgetExceededError(Exception):
    """A computation would exceed its configured work budget.

    Attributes carry whatever partial information is available: `completed`
    is the last fully finished unit (e.g. the largest iteration depth that
    was computed), `lower_bound` is a proven lower bound for the quantity
    that could not be finished (e.g. a period).
    """

    def __init__(self, message, budget=None, completed=None, lower_bound=None):
        super().__init__(message)
        self.budget = budget
        self.completed = completed
        self.lower_bound = lower_bound

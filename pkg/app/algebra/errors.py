# app/algebra/errors.py
"""
라이브러리 공통 예외 계층

- 모든 예외는 LabError 를 상속 (CLI/라우터에서 한 번에 잡기 위함)
- BudgetExceeded 는 추정 개수(estimate)를 함께 전달
- ConstraintViolation 은 실패한 식 이름과 t-차수를 함께 전달
"""

from typing import Optional


class LabError(Exception):
    """splitlab 라이브러리 예외의 공통 부모"""


class FieldError(LabError):
    pass


class SpaceError(LabError):
    pass


class PointError(LabError):
    pass


class BudgetExceeded(LabError):
    def __init__(self, what: str, estimate: int, budget: int):
        self.what = what
        self.estimate = int(estimate)
        self.budget = int(budget)
        super().__init__(f"{what}: estimated {self.estimate} exceeds budget {self.budget}")


class FamilyError(LabError):
    pass


class TruncationError(FamilyError):
    pass


class ConstraintViolation(FamilyError):
    def __init__(self, equation: str, order: Optional[int] = None, detail: str = ""):
        self.equation = equation
        self.order = order
        msg = f"constraint '{equation}' fails"
        if order is not None:
            msg += f" at t^{order}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class PreconditionError(FamilyError):
    pass


class FormError(LabError):
    pass


class NormalPositionError(FormError):
    pass


class WeightError(LabError):
    pass


class DatumError(LabError):
    pass


class ShapeError(LabError):
    pass


class InterpolationError(LabError):
    pass

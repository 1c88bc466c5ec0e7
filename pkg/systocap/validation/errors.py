# SPDX-FileCopyrightText: 2022 Contributors to the Systocap project
#
# SPDX-License-Identifier: MPL-2.0

"""
Error classes
"""
from abc import ABC
from typing import Any, Dict, List, Optional, Tuple, Union


# No need to explain each class, as the class name should be self explanatory


class ValidationError(ABC):
    """
    The Validation Error is an abstract base class which should be extended by all validation errors. It supplies
    three public member variables: component, field and ids; storing information about the origin of the validation
    error. Error classes can extend the public members. For example:

        NotPositiveDefiniteError(ValidationError):
            component = 'ellipsoid'
            field = 'gram'
            ids = []
            eigenvalue = -0.25

    For convenience, a human readable representation of the error is supplied using the str() function.
    I.e. print(str(error)) will print a human readable error message like:

        Field 'gram' is not positive definite (smallest eigenvalue -0.25) for the ellipsoid gauge.

    """

    component: Optional[str] = None
    """
    The gauge family to which the error applies.
    """

    field: Optional[Union[str, List[str]]] = None
    """
    The data field, or fields, to which the error applies.
    """

    ids: List[int] = []
    """
    The row indices (e.g. vertex numbers) to which the error applies. Empty for errors on a field as a whole.
    """

    _message: str = "An unknown validation error occurred."

    @property
    def component_str(self) -> str:
        """
        A string representation of the component to which this error applies
        """
        return str(self.component)

    @property
    def field_str(self) -> str:
        """
        A string representation of the field to which this error applies
        """
        return f"'{self.field}'"

    def get_context(self) -> Dict[str, Any]:
        """
        Returns a dictionary that supplies (human readable) information about this error. Each member variable is
        included in the dictionary. If a function {field_name}_str() exists, the value is overwritten by that function.
        """
        context = self.__dict__.copy()
        for key in context:
            if hasattr(self, key + "_str"):
                context[key] = str(getattr(self, key + "_str"))
        return context

    def __str__(self) -> str:
        n_rows = len(self.ids)
        context = self.get_context()
        context["n"] = n_rows
        context["objects"] = "row" if n_rows == 1 else "rows"
        return self._message.format(**context).strip()

    def __repr__(self) -> str:
        context = " ".join(f"{key}={value}" for key, value in self.get_context().items())
        return f"<{type(self).__name__}: {context}>"

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.component == other.component
            and self.field == other.field
            and self.ids == other.ids
        )


class SingleFieldValidationError(ValidationError):
    """
    Base class for an error that applies to a single field of a gauge
    """

    _message = "Field {field} is not valid for the {component} gauge."
    component: str
    field: str
    ids: List[int]

    def __init__(self, component: str, field: str, ids: Optional[List[int]] = None):
        """
        Args:
            component: Gauge family name
            field: Field name
            ids: List of row indices, empty if the error applies to the field as a whole
        """
        self.component = component
        self.field = field
        self.ids = sorted(ids) if ids else []


class MultiFieldValidationError(ValidationError):
    """
    Base class for an error that applies to multiple fields of a gauge
    """

    _message = "Fields {field} are not valid for the {component} gauge."
    component: str
    field: List[str]
    ids: List[int]

    def __init__(self, component: str, fields: List[str], ids: Optional[List[int]] = None):
        """
        Args:
            component: Gauge family name
            fields: List of field names
            ids: List of row indices
        """
        self.component = component
        self.field = sorted(fields)
        self.ids = sorted(ids) if ids else []

        if len(self.field) < 2:
            raise ValueError(f"{type(self).__name__} expects at least two fields: {self.field}")

    @property
    def field_str(self) -> str:
        return " and ".join(f"'{field}'" for field in self.field)


class EmptyFieldError(SingleFieldValidationError):
    """
    A list valued field has no entries.
    E.g. a V-polytope without vertices.
    """

    _message = "Field {field} is empty for the {component} gauge."


class NotFiniteError(SingleFieldValidationError):
    """
    A field contains NaN or infinite values.
    """

    _message = "Field {field} contains non-finite values in {n} {objects} of the {component} gauge."


class NotCallableError(SingleFieldValidationError):
    """
    The gauge callback of an oracle is not callable.
    """

    _message = "Field {field} is not callable for the {component} gauge."


class LengthMismatchError(MultiFieldValidationError):
    """
    Two list valued fields that should be paired row by row have different lengths.
    E.g. the normals and offsets of an H-polytope.
    """

    _message = "Fields {field} have a different number of rows for the {component} gauge."


class DimensionMismatchError(SingleFieldValidationError):
    """
    The vectors in a field do not have the declared dimension.
    E.g. a 3x3 Gram matrix for a gauge declared with dim = 2.
    """

    _message = "Field {field} does not match dimension {expected} for the {component} gauge."
    expected: int

    def __init__(self, component: str, field: str, expected: int):
        super().__init__(component, field)
        self.expected = expected

    def __eq__(self, other):
        return super().__eq__(other) and self.expected == other.expected


class NotSymmetricError(SingleFieldValidationError):
    """
    A matrix that should be symmetric is not.
    """

    _message = "Field {field} is not a symmetric matrix for the {component} gauge."


class NotPositiveDefiniteError(SingleFieldValidationError):
    """
    A Gram matrix has an eigenvalue that is too small (or negative).
    """

    _message = "Field {field} is not positive definite (smallest eigenvalue {eigenvalue}) for the {component} gauge."
    eigenvalue: float

    def __init__(self, component: str, field: str, eigenvalue: float):
        super().__init__(component, field)
        self.eigenvalue = eigenvalue


class RankDeficientError(SingleFieldValidationError):
    """
    The rows of a field do not span the whole space, so the body is unbounded or has an empty interior.
    """

    _message = "Field {field} spans a subspace of dimension {rank} instead of {dimension} for the {component} gauge."
    rank: int
    dimension: int

    def __init__(self, component: str, field: str, rank: int, dimension: int):
        super().__init__(component, field)
        self.rank = rank
        self.dimension = dimension

    def __eq__(self, other):
        return super().__eq__(other) and self.rank == other.rank and self.dimension == other.dimension


class NotCentrallySymmetricError(SingleFieldValidationError):
    """
    A polytope is not symmetric under v -> -v, so its gauge is not reversible.
    The ids are the rows that lack a negated partner.
    """

    _message = "Field {field} is not closed under negation for {n} {objects} of the {component} gauge."


class ComparisonError(SingleFieldValidationError):
    """
    Base class for comparison errors.
    E.g. The exponent of an lp gauge is not greater than or equal to one.
    """

    _message = "Invalid {field}, compared to {ref_value} for the {component} gauge."

    RefType = Union[int, float, str, Tuple[Union[int, float, str], ...]]

    def __init__(
        self, component: str, field: str, ids: Optional[List[int]], ref_value: "ComparisonError.RefType"
    ):
        super().__init__(component, field, ids)
        self.ref_value = ref_value

    @property
    def ref_value_str(self):
        """
        A string representation of the reference value. E.g. 'zero', 'one' or '123'.
        """
        if isinstance(self.ref_value, tuple):
            return " and ".join(map(str, self.ref_value))
        if self.ref_value == 0:
            return "zero"
        if self.ref_value == 1:
            return "one"
        return str(self.ref_value)

    def __eq__(self, other):
        return super().__eq__(other) and self.ref_value == other.ref_value


class NotGreaterThanError(ComparisonError):
    """
    The value of a field is not greater than a reference value.
    """

    _message = "Field {field} is not greater than {ref_value} for the {component} gauge."


class NotGreaterOrEqualError(ComparisonError):
    """
    The value of a field is not greater or equal to a reference value.
    """

    _message = "Field {field} is not greater than (or equal to) {ref_value} for the {component} gauge."

from typing import Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from psr.models.complex_model import SimplicialComplex
from psr.services.complex_service import complex_service


class ComplexDocument(BaseModel):
    """A complex given by generating faces; the hereditary closure is taken on load."""

    vertices: Optional[int] = Field(None, ge=0, description="Vertices are 0..vertices-1")
    vertex_set: Optional[list[int]] = Field(None, description="Explicit vertex ids")
    faces: list[list[int]] = Field(default_factory=list, description="Generating faces (facets suffice)")

    @field_validator("faces")
    @classmethod
    def faces_must_be_non_empty(cls, v):
        for face in v:
            if not face:
                raise ValueError("faces must be non-empty vertex lists")
        return v

    @model_validator(mode="after")
    def one_vertex_source(self):
        if self.vertices is not None and self.vertex_set is not None:
            raise ValueError("give vertices or vertex_set, not both")
        return self

    def to_domain(self) -> SimplicialComplex:
        return SimplicialComplex.from_facets(self.faces, n_vertices=self.vertices, vertex_set=self.vertex_set)

    @classmethod
    def from_domain(cls, complex: SimplicialComplex, facets_only: bool = True) -> "ComplexDocument":
        faces = complex_service.facets(complex) if facets_only else complex.faces
        return cls(
            vertex_set=list(complex.vertex_set),
            faces=[list(face.vertices) for face in sorted(faces, key=lambda s: (s.dim, s.vertices))],
        )


class IdealDocument(BaseModel):
    generators: list[list[int]]
    facet_primes: list[list[int]] = Field(..., description="Generators of P_sigma, one list per facet")

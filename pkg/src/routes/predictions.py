from fastapi import APIRouter, HTTPException, status

from src.exceptions import LabelError, PredictionError
from src.repository.catalog import root_system_data
from src.schemas import (
    EisensteinConstantResponse,
    FamilyRequest,
    IdentityRequest,
    PairRequest,
    PredictionReport,
)
from src.services import prediction

router = APIRouter(prefix='/predictions', tags=["predictions"])


def _pair_names(names: list[str] | None) -> tuple[tuple[str, ...], tuple[str, ...]]:
    if names is None:
        return ("F",), ("G",)
    if len(names) != 2:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail="Give exactly two names")
    return (names[0],), (names[1],)


@router.post("/pair", response_model=PredictionReport)
async def predict_pair(body: PairRequest):
    """
    Predicts the primes modulo which F, G or FG are singular.

    Parameters:
        body (PairRequest): Signature n, weights k and l, and the mode.

    Raises:
        HTTPException: 400 if the bracket is degenerate.

    Returns:
        PredictionReport: One result per (target, prime).
    """
    f, g = _pair_names(body.names)
    try:
        return prediction.predict_pair(body.n, body.k, body.l, body.mode, f, g)
    except PredictionError as err:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(err))


@router.post("/family", response_model=PredictionReport)
async def predict_family(body: FamilyRequest):
    """
    Predictions for every product of a family against every disjoint partner.

    Raises:
        HTTPException: 400 if names and weights disagree.
    """
    try:
        return prediction.predict_family(body.n, body.weights, body.mode, body.names)
    except PredictionError as err:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(err))


@router.post("/identity", response_model=PredictionReport)
async def predict_identity(body: IdentityRequest):
    f, g = _pair_names(body.names)
    try:
        return prediction.predict_identity(body.n, body.k, body.l, body.rhs, f, g)
    except PredictionError as err:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(err))


@router.get("/eisenstein-constant", response_model=EisensteinConstantResponse)
async def eisenstein_constant(root: str, k: int, l: int):
    """
    The constant c of the pairing of a reflective form with an Eisenstein series.

    Parameters:
        root (str): E6, E7 or E8.
        k (int): Weight of the reflective form.
        l (int): Weight of the Eisenstein series.

    Raises:
        HTTPException: 404 for an unknown root system.
    """
    try:
        data = root_system_data(root)
    except LabelError:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail="Root system not found")
    return EisensteinConstantResponse(root=data.name, k=k, l=l, value=prediction.eisenstein_constant(data, k, l))

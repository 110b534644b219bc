from typing import List

from fastapi import APIRouter, Depends, HTTPException, status

from src.exceptions import LabelError
from src.repository.catalog import catalog_entries, signature_n
from src.schemas import CatalogEntry, CatalogRunReport, LatticeSpec
from src.services.prediction import run_catalog

router = APIRouter(prefix='/catalog', tags=["catalog"])


@router.get("/", response_model=List[CatalogEntry], response_model_exclude_none=True)
async def read_catalog(entries: List[CatalogEntry] = Depends(catalog_entries)):
    """
    Returns every catalog entry with its forms and claimed congruences.

    Parameters:
        entries (List[CatalogEntry]): The active catalog.

    Returns:
        List[CatalogEntry]: The catalog.
    """
    return entries


@router.get("/run", response_model=CatalogRunReport)
async def run(mode: str = "valuation", entries: List[CatalogEntry] = Depends(catalog_entries)):
    """
    Runs the prediction engine over the catalog.

    Parameters:
        mode (str): ``strict`` or ``valuation``.
        entries (List[CatalogEntry]): The active catalog.

    Raises:
        HTTPException: 400 for an unknown mode.

    Returns:
        CatalogRunReport: Verified, missed, out-of-mode and extra claims per entry.
    """
    if mode not in ("strict", "valuation"):
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail="Mode must be strict or valuation")
    return run_catalog(entries, mode)


@router.get("/signature", response_model=LatticeSpec)
async def read_signature(label: str):
    """
    Parses a lattice label.

    Raises:
        HTTPException: 400 if the label is not in the grammar.
    """
    try:
        return LatticeSpec(label=label, n=signature_n(label))
    except LabelError as err:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(err))

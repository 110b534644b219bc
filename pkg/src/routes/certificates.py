from fastapi import APIRouter, Depends, HTTPException, Query, status

from src.conf.config import settings
from src.exceptions import ArithmeticDomainError, CacheIntegrityError, CacheLockedError, ContractViolation, SeriesError
from src.repository.forms import FORM_KEYS, FormCache, get_forms
from src.schemas import Certificate
from src.services.congruence import check_singular

router = APIRouter(prefix='/certificates', tags=["certificates"])


@router.get("/{form}", response_model=Certificate)
def read_certificate(
    form: str,
    prime: int,
    prec: int = Query(default=settings.default_precision, ge=4),
    cache: FormCache = Depends(get_forms),
):
    """
    Certifies singularity of a cached form modulo a prime, building the tower on first use.

    Parameters:
        form (str): One of e4, e6, chi10, chi12, psi5, phi35, phi30.
        prime (int): The prime p.
        prec (int): Precision P.
        cache (FormCache): The form cache.

    Raises:
        HTTPException: 404 for an unknown form, 400 if p is not prime, 422 if p divides D_F or
            the form has no terms at this precision, 409 while the cache is being written,
            503 if the cached file is corrupted.

    Returns:
        Certificate: The scan result.
    """
    if form not in FORM_KEYS:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail="Form not found")
    try:
        siegel_form = cache.get(form, prec)
        return check_singular(siegel_form.series, prime, prec, siegel_form.name)
    except CacheLockedError as err:
        raise HTTPException(status_code=status.HTTP_409_CONFLICT, detail=str(err))
    except CacheIntegrityError as err:
        raise HTTPException(status_code=status.HTTP_503_SERVICE_UNAVAILABLE, detail=str(err))
    except ArithmeticDomainError as err:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(err))
    except (ContractViolation, SeriesError) as err:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(err))

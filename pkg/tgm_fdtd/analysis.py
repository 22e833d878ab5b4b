import logging
from collections import namedtuple

import numpy as np

from tgm_fdtd import DomainException, EmptyBandException, SeriesMismatchException

logger = logging.getLogger(__name__)

DEFAULT_BAND_THRESHOLD = 0.01

Spectrum = namedtuple('Spectrum', ['freqs', 'amps'])


def transform_length(n_samples):
    """Next power of two at least twice the record."""
    return 1 << max(1, int(2 * n_samples - 1).bit_length())


def spectrum(series):
    """One-sided spectrum (0 to Nyquist) of a probe series, no window, scaled by dt."""
    samples = np.asarray(series.samples, dtype=float)
    if not len(samples):
        raise DomainException('cannot transform an empty series')
    m = transform_length(len(samples))
    return Spectrum(np.fft.rfftfreq(m, series.dt), np.fft.rfft(samples, m) * series.dt)


def reflection_magnitude(incident, total, band_threshold=DEFAULT_BAND_THRESHOLD):
    """|R|(f) from a vacuum reference run and a medium run recorded at the same vacuum node.

    Returns ``(freqs, magnitude)`` restricted to bins where the incident spectrum
    reaches ``band_threshold`` of its maximum.
    """
    if incident.node_index != total.node_index or incident.dt != total.dt \
            or len(incident.samples) != len(total.samples):
        raise SeriesMismatchException('incident and total series differ in node, dt or length')
    if not 0 < band_threshold <= 1:
        raise EmptyBandException('band_threshold must lie in (0, 1], got {}'.format(band_threshold))

    reflected = total._replace(samples=np.asarray(total.samples) - np.asarray(incident.samples))
    incident_spectrum = spectrum(incident)
    reflected_spectrum = spectrum(reflected)
    incident_magnitude = np.abs(incident_spectrum.amps)
    band = incident_magnitude >= band_threshold * incident_magnitude.max()
    if not incident_magnitude.max() > 0 or not np.any(band):
        raise EmptyBandException('no frequency bin passes threshold {}'.format(band_threshold))
    logger.debug('reflection band: %d of %d bins', int(band.sum()), len(band))
    magnitude = np.abs(reflected_spectrum.amps[band]) / incident_magnitude[band]
    return incident_spectrum.freqs[band], magnitude


def error_summary(estimate, reference):
    """(max, rms) absolute error."""
    error = np.abs(np.asarray(estimate) - np.asarray(reference))
    return float(error.max()), float(np.sqrt(np.mean(error ** 2)))

from spectra.spectrum import Spectrum, genus_from_c3, h1_from_spectrum, h2_from_spectrum


def spectrum_to_response(s: Spectrum) -> dict:
    return {
        "k": s.to_json(),
        "c3": s.c3,
        "p_a": genus_from_c3(s.c3),
        "h1": {str(l): h1_from_spectrum(s, l) for l in range(-3, 0)},
        "h2": {str(l): h2_from_spectrum(s, l) for l in range(-3, 1)},
    }

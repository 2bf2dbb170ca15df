"""MOR public-key encryption over the classical groups SL, O(2l+1), Sp(2l) and O(2l) over F_q."""

from .algebra import GF, FieldElement, FieldSpec, Matrix
from .attack import bd_obstruction_report, recover_conjugator_fast, recover_conjugator_linear
from .automorphism import AutoRep, auto_apply, auto_compose, auto_from_conjugation, auto_pow
from .generators import GenLabel, enumerate_generators, gen_matrix, word_eval
from .groups import GroupId, form_matrix, is_member, random_element
from .mor import Ciphertext, PrivateKey, PublicKey, decode_bytes, decrypt, encode_bytes, encrypt, keygen
from .word_problem import decompose

__all__ = [
    "GF",
    "AutoRep",
    "Ciphertext",
    "FieldElement",
    "FieldSpec",
    "GenLabel",
    "GroupId",
    "Matrix",
    "PrivateKey",
    "PublicKey",
    "auto_apply",
    "auto_compose",
    "auto_from_conjugation",
    "auto_pow",
    "bd_obstruction_report",
    "decode_bytes",
    "decompose",
    "decrypt",
    "encode_bytes",
    "encrypt",
    "enumerate_generators",
    "form_matrix",
    "gen_matrix",
    "is_member",
    "keygen",
    "random_element",
    "recover_conjugator_fast",
    "recover_conjugator_linear",
    "word_eval",
]

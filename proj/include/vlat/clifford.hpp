#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "vlat/quadspace.hpp"

namespace vlat {

// Element of the Clifford algebra C(U) for dim U <= 8, stored as exact
// coefficients on the monomial basis e_S = e_{i_1}...e_{i_k} indexed by
// bitmask (bit i = generator e_{i+1}).  Defining relations
// e_i e_j + e_j e_i = [e_i, e_j], so e_i^2 = [e_i, e_i]/2 = Q(e_i).
class CliffordElt {
public:
    CliffordElt() = default;
    explicit CliffordElt(const QuadSpace& space);
    static CliffordElt scalar(const QuadSpace& space, const Rat& c);
    static CliffordElt generator(const QuadSpace& space, int i);  // e_{i+1}, 0-based
    static CliffordElt monomial(const QuadSpace& space, uint16_t mask, const Rat& c);
    static CliffordElt from_vector(const QuadSpace& space, const std::vector<Rat>& v);

    const QuadSpace& space() const { return space_; }
    int gen_count() const { return space_.dim(); }
    const std::map<uint16_t, Rat>& terms() const { return coeff_; }
    Rat coeff(uint16_t mask) const;
    bool is_zero() const { return coeff_.empty(); }
    bool operator==(const CliffordElt& o) const;

    CliffordElt operator+(const CliffordElt& o) const;
    CliffordElt operator-(const CliffordElt& o) const;
    CliffordElt scaled(const Rat& c) const;

    void add_term(uint16_t mask, const Rat& c);

private:
    QuadSpace space_;
    std::map<uint16_t, Rat> coeff_;
    void check_same(const CliffordElt& o) const;
};

CliffordElt cmul(const CliffordElt& a, const CliffordElt& b);

// (even part, odd part)
std::pair<CliffordElt, CliffordElt> grading_split(const CliffordElt& a);

// The reversal involution (v1...vk)^dagger = vk...v1.
CliffordElt dagger(const CliffordElt& a);

// Matrix of left multiplication by a on the monomial basis (2^m x 2^m).
QMat left_mul_matrix(const CliffordElt& a);

// Trace of left multiplication; a fixed positive integer multiple of the
// reduced trace, which is all the symplectic-form work needs.
Rat regular_trace(const CliffordElt& a);

struct GSpinVerdict {
    bool even = false;
    bool member = false;
    std::optional<Rat> similitude;     // g^dagger g when scalar
    std::optional<QMat> so_matrix;     // action v -> g v g^{-1} on generators
    std::optional<CliffordElt> inverse;
};

// Membership in {g in C^+ invertible : g U g^{-1} = U, g^dagger g scalar}.
// Throws InvalidInput when the odd part is nonzero (distinct from not-member).
GSpinVerdict is_gspin(const CliffordElt& g);

std::vector<Rat> act_vector(const CliffordElt& g, const std::vector<Rat>& v);
QMat so_image(const CliffordElt& g);

// Matrix of (x, x') -> Tr(x delta x'^dagger) on the monomial basis;
// delta^dagger must equal -delta.  Alternating and nondegenerate.
QMat psi_form(const CliffordElt& delta);

// Cocharacter value on the hyperbolic pair (x0#, x1#) of the sharp basis:
// t^{-1} x0# x1# + x1# x0#, acting as t^{-1} on x0#, t on x1#, identity on
// the remaining basis vectors.  Element of C(sharp-basis space).
CliffordElt mu_sharp(const Rat& t, const SharpSpace& S);

// p^{-1} x2 x1 in C(base); squares to the scalar -p^{-1} a1 a2 / 4.
CliffordElt g_zero(const SharpSpace& S);

}  // namespace vlat

#pragma once

#include <string>
#include <vector>

#include "qparity/dense.hpp"

namespace qparity {

enum class IdentityId {
    KFactorization,      // K = 1/2 W_half (1 + W^(x)2N)
    MjCliffordForm,      // M_j projector form = Z CZ CZ
    CczPairCompression,  // CX-conjugated CCZ = CCZ pair sharing two controls
    TildeVCompression,   // tilde-V = compressed tilde-V
    GadgetEqualsUj,      // measurement gadget channel = unitary U_j
};

const char* identity_name(IdentityId id);

struct IdentityReport {
    IdentityId id;
    double max_deviation;
    bool pass;
    std::string detail;
};

/// Computes both sides of the identity as dense operators (channels where a
/// measurement is involved) and reports the max entry-wise deviation.
/// N is used by KFactorization and TildeVCompression; theta by the
/// angle-dependent identities. Dense comparison needs N <= 4.
IdentityReport verify_identity(IdentityId id, int N, double theta, double tol = 1e-10);

/// All five identities; angle-dependent ones run once per supplied theta and
/// report the worst deviation.
std::vector<IdentityReport> verify_all_identities(int N, const std::vector<double>& thetas,
                                                  double tol = 1e-10);

/// Max deviation between the accepted Kraus operators of the direct,
/// decomposed and ideal full-protocol circuits, up to a
/// global phase per circuit (the full protocol's gadget branches each carry
/// 2^{-N/2} of the Kraus weight).
double parity_check_kraus_agreement(int N, double theta);

/// Dense W(theta) products on the input space: W on every even-labelled input
/// (the half that keeps the residual rotation) and on every odd-labelled one.
Matrix w_on_even_inputs(int N, double theta);
Matrix w_on_odd_inputs(int N, double theta);

/// U_j as a dense 8x8 on (protocol labels 0, 2j-1, 2j).
Matrix dense_uj(double theta);

}  // namespace qparity

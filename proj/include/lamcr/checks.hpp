#pragma once

#include <string>
#include <vector>

#include "lamcr/bounds.hpp"
#include "lamcr/join.hpp"
#include "lamcr/syntax.hpp"

namespace lamcr {

std::vector<Arrow> chain_arrows(const EqualityChain& c);

BoundCheck make_check(std::string name, std::size_t actual, const BoundValue& bound);

bool all_ok(const std::vector<BoundCheck>& checks);

// Bound-check blocks comparing certificate path lengths against the closed-form
// length bounds, plus the chain-wide term-size bound.
std::vector<BoundCheck> main_join_checks(const EqualityChain& c, const JoinCertificate& for_m0,
                                         const JoinCertificate& for_mk);
std::vector<BoundCheck> refined_join_checks(const EqualityChain& c, const JoinCertificate& cert);

// For a peak P_n <<- M ->> Q_m (n <= m): checks on the corollary certificate
// joining at Q_m^{n*} (empty when n = 0, where the bound is undefined).
std::vector<BoundCheck> peak_join_checks(const ReductionPath& left, const ReductionPath& right,
                                         const JoinCertificate& first);

// The valley join at M^{m*} built with the cofinal strategy, and its
// valley-size checks (empty when n = 0).
JoinCertificate cofinal_valley(const ReductionPath& left, const ReductionPath& right);
std::vector<BoundCheck> valley_join_checks(const ReductionPath& left, const ReductionPath& right,
                                           const JoinCertificate& valley);

}  // namespace lamcr

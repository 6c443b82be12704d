#pragma once

#include <memory>
#include <string>

#include "superconc/field_core.hpp"

namespace superconc {

// Model specification grammar: `name:key=value,key=value`. Supported:
//   iid:n=1024
//   polymer:n=64
//   sk:n=10,xi=x^2[,backend=kernel|disorder]
//   nk:N=16,K=4
//   dgff:n=32,boundary=torus|zero
//   gue:n=100
//   ce_a:n=12
//   ce_b:n=100
// Throws ParseError naming the offending token.
std::unique_ptr<FieldSampler> make_sampler(const std::string& spec);

// Grammar-level validation (model name known, required keys present and
// integral) without constructing the sampler.
void validate_spec(const std::string& spec);

// Returns the spec with its size parameter (n, or N for nk) replaced;
// used by scaling sweeps over a model family.
std::string respec_size(const std::string& spec, int n);

}  // namespace superconc

#pragma once

#include <cstdint>
#include <string>

#include "qapeda/qap.hpp"

namespace qapeda::kernels {

enum class Isa { scalar, avx2 };

// Best instruction set the running CPU supports.
Isa detect();

// Currently selected kernel set; defaults to detect() on first use.
Isa active();
void set_active(Isa isa);

std::string isa_name(Isa isa);

// Full objective, reference implementation over the int64 matrices.
std::int64_t evaluate_scalar(const QapInstance& inst, const std::int32_t* sigma);

// Objective delta of swapping sigma(i1) and sigma(i2), reference
// implementation. Adds the post-swap row/column cross terms, subtracts the
// pre-swap ones, then fixes the four double-counted (i1,i2)-block entries.
std::int64_t swap_delta_scalar(const QapInstance& inst, const std::int32_t* sigma,
                               std::size_t i1, std::size_t i2);

// AVX2 variants over the int32 mirrors; require inst.fits32() and x86 AVX2.
// Bit-identical to the scalar versions under the instance's overflow contract.
std::int64_t evaluate_avx2(const QapInstance& inst, const std::int32_t* sigma);
std::int64_t swap_delta_avx2(const QapInstance& inst, const std::int32_t* sigma,
                             std::size_t i1, std::size_t i2);

// Dispatch to the active ISA, falling back to scalar when the instance has
// entries too large for the int32 mirrors.
std::int64_t evaluate(const QapInstance& inst, const std::int32_t* sigma);
std::int64_t swap_delta(const QapInstance& inst, const std::int32_t* sigma,
                        std::size_t i1, std::size_t i2);

}  // namespace qapeda::kernels

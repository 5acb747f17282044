#ifndef UM_ERROR_HPP
#define UM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace um {

enum class errc : int {
    ok = 0,
    division_by_zero,
    indistinguishable_at_precision,
    out_of_domain,
    pole_hit,
    exp_domain,
    log_domain,
    syntax_error,
    arity_error,
    pole_on_node,
    precision_exhausted,
    degree_mismatch,
    zero_constant,
    pole_inside,
    pole_on_border,
    zero_on_border,
    non_convergent_sweep,
    not_antiholomorphic_free,
    window_exceeded,
    singular_at_evaluation,
    border_touches_spectrum,
    rank_deficiency,
    spectrum_mismatch,
    bad_config,
    io_error,
};

const char* errc_name(errc c);

struct error : std::runtime_error {
    errc code;
    error(errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

}

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace graphlabel {

// Discriminates failures for tests and for the CLI exit-code mapping:
// input/config problems exit with 2, numerical failures with 3.
enum class Errc {
    // input / config
    negative_weight,
    node_id_out_of_range,
    duplicate_edge,
    dangling_node,
    asymmetric_input,
    non_positive_sigma,
    empty_point_set,
    k_too_large,
    no_labeled_nodes,
    alpha_out_of_range,
    injection_out_of_range,
    size_mismatch,
    parse_error,
    unknown_label,
    zero_mass_row,
    all_labels_withheld,
    degenerate_block,
    io_error,
    config_error,
    // numerical
    not_label_connected,
    singular_system,
    non_terminating_walk,
    eigensolver_failure,
    defective_matrix,
    walk_length_cap,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Bad input data or configuration; the CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

// Singular systems, non-convergent or non-terminating computations; exit code 3.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace graphlabel

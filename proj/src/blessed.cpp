#include "opnet/blessed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opnet::relu {

namespace {

double max_alpha(const fd2d::FdSystem& system) {
    double a = 0.0;
    for (const auto& up : system.updates) a = std::max(a, std::abs(up.alpha));
    if (a == 0.0) a = system.h * system.h;  // degenerate all-zero coefficients
    return a * 1.0000001;
}

double entry_box(const std::vector<double>& t0) {
    double m = 0.0;
    for (double v : t0) m = std::max(m, std::abs(v));
    // uniform-boundedness proxy: T_k entries stay within twice the starting
    // inverse for the validated coefficient class; 2.5 leaves headroom
    return 2.5 * m;
}

}  // namespace

BlessedCascadeNet::BlessedCascadeNet(const fd2d::FdSystem& system, double epsilon_stage)
    : dim_(system.n * system.n), t0_(fd2d::dense_inverse_of_s(system)), rhs_(system.F),
      rational_(compile_rational_R(epsilon_stage, max_alpha(system), entry_box(t0_))) {
    stages_.reserve(system.updates.size());
    for (const auto& up : system.updates) {
        Stage st;
        st.alpha_scale = (up.group == 2) ? system.h * system.h : system.h;
        st.row = up.row;
        st.v = up.v;
        stages_.push_back(std::move(st));
    }
}

BlessedCascadeNet::Output BlessedCascadeNet::evaluate(const std::vector<double>& a_inputs) const {
    if (a_inputs.size() != stages_.size()) {
        throw InputError("BlessedCascadeNet: need one coefficient per stage");
    }
    const std::size_t m = dim_;
    std::vector<double> T = t0_;
    std::vector<double> batch(5 * m * m);
    for (std::size_t k = 0; k < stages_.size(); ++k) {
        const Stage& st = stages_[k];
        const double alpha = st.alpha_scale * a_inputs[k];
        if (std::abs(alpha) > rational_.x1_max) {
            throw NumericalError("BlessedCascadeNet: stage " + std::to_string(k + 1) +
                                 " alpha outside validated range");
        }
        // gather v^T T and T e_row once per stage
        std::vector<double> vT(m, 0.0), Tu(m);
        for (const auto& [c, w] : st.v) {
            const double* row = &T[c * m];
            for (std::size_t j = 0; j < m; ++j) vT[j] += w * row[j];
        }
        for (std::size_t i = 0; i < m; ++i) Tu[i] = T[i * m + st.row];
        double vTu = 0.0;
        for (const auto& [c, w] : st.v) vTu += w * Tu[c];

        const double bound = rational_.entry_bound;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t e = i * m + j;
                double* in = &batch[5 * e];
                in[0] = alpha;
                in[1] = T[e];
                in[2] = vTu;
                in[3] = Tu[i];
                in[4] = vT[j];
                for (int c = 1; c < 5; ++c) {
                    if (std::abs(in[c]) > bound) {
                        throw NumericalError("BlessedCascadeNet: stage " + std::to_string(k + 1) +
                                             " entry (" + std::to_string(i) + "," +
                                             std::to_string(j) + ") outside validated box");
                    }
                }
            }
        }
        T = rational_.net.evaluate_batch(batch, m * m);
    }
    Output out;
    out.solution.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += T[i * m + j] * rhs_[j];
        out.solution[i] = s;
    }
    out.t_final = std::move(T);
    return out;
}

std::vector<double> raw_update_coefficients(const fd2d::FdSystem& system) {
    std::vector<double> out;
    out.reserve(system.updates.size());
    for (const auto& up : system.updates) {
        const double scale = (up.group == 2) ? system.h * system.h : system.h;
        out.push_back(up.alpha / scale);
    }
    return out;
}

std::size_t BlessedCascadeNet::wiring_nonzeros_per_entry() const {
    // alpha, T_ij, T_i,row fixed; v^T T u and (v^T T)_j take |v| entries each
    std::size_t v_len = 1;
    for (const auto& st : stages_) v_len = std::max(v_len, st.v.size());
    return 3 + 2 * v_len;
}

std::size_t BlessedCascadeNet::audit_width() const {
    return dim_ * dim_ * rational_.net.width();
}

std::size_t BlessedCascadeNet::audit_depth() const {
    return stages_.size() * rational_.net.depth();
}

std::size_t BlessedCascadeNet::audit_size() const {
    const std::size_t per_entry = rational_.net.size() + wiring_nonzeros_per_entry();
    return stages_.size() * dim_ * dim_ * per_entry;
}

}  // namespace opnet::relu

#pragma once

// Anderson mixing over full Gauss-Seidel cycles. The fixed point of the
// cycle map is unchanged; only the sequence of iterates is accelerated.

#include <Eigen/Dense>

#include <deque>

namespace lgpr::detail {

class AndersonMixer {
public:
    explicit AndersonMixer(int depth) : depth_(depth) {}

    void reset() {
        dF_.clear();
        dG_.clear();
        f_prev_.resize(0);
    }

    // x went into one cycle and came out as gx; gx is replaced by the mixed iterate.
    void mix(const Eigen::VectorXd& x, Eigen::VectorXd& gx) {
        if (depth_ <= 0)
            return;
        Eigen::VectorXd f = gx - x;
        if (f_prev_.size() == f.size()) {
            dF_.push_back(f - f_prev_);
            dG_.push_back(gx - g_prev_);
            if (static_cast<int>(dF_.size()) > depth_) {
                dF_.pop_front();
                dG_.pop_front();
            }
        }
        f_prev_ = f;
        g_prev_ = gx;
        if (dF_.empty())
            return;
        Eigen::MatrixXd A(f.size(), static_cast<Eigen::Index>(dF_.size()));
        for (std::size_t c = 0; c < dF_.size(); ++c)
            A.col(static_cast<Eigen::Index>(c)) = dF_[c];
        const Eigen::VectorXd gamma = A.colPivHouseholderQr().solve(f);
        if (!gamma.allFinite()) {
            reset();
            return;
        }
        for (std::size_t c = 0; c < dG_.size(); ++c)
            gx -= gamma[static_cast<Eigen::Index>(c)] * dG_[c];
    }

private:
    int depth_;
    std::deque<Eigen::VectorXd> dF_, dG_;
    Eigen::VectorXd f_prev_, g_prev_;
};

} // namespace lgpr::detail

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tact/rng.hpp"

namespace tact {

// Dueling Q-network: dense trunk, then an action-wise advantage channel and a
// shared baseline channel; Q(a) = A(a) + V. Hidden layers use ReLU, outputs
// are linear. Parameters and math run in scalar S so the same code serves
// float training and double finite-difference verification.
template <class S>
struct QNet {
    using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

    int input_dim = 0;
    int trunk_width = 256;
    int head_width = 256;
    int n_actions = 3;
    bool mean_subtract_advantage = false;  // identifiability variant, off by default

    Mat w_trunk, w_adv, w_adv_out, w_base, w_base_out;
    Vec b_trunk, b_adv, b_adv_out, b_base, b_base_out;

    QNet() = default;
    QNet(int input, int actions, int trunk = 256, int head = 256)
        : input_dim(input), trunk_width(trunk), head_width(head), n_actions(actions) {
        w_trunk = Mat::Zero(input_dim, trunk_width);
        b_trunk = Vec::Zero(trunk_width);
        w_adv = Mat::Zero(trunk_width, head_width);
        b_adv = Vec::Zero(head_width);
        w_adv_out = Mat::Zero(head_width, n_actions);
        b_adv_out = Vec::Zero(n_actions);
        w_base = Mat::Zero(trunk_width, head_width);
        b_base = Vec::Zero(head_width);
        w_base_out = Mat::Zero(head_width, 1);
        b_base_out = Vec::Zero(1);
    }

    // He-style uniform fan-in initialization, seed controlled.
    void init(Rng& rng) {
        auto fill = [&](Mat& w) {
            S limit = static_cast<S>(std::sqrt(6.0 / static_cast<double>(w.rows())));
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                for (Eigen::Index r = 0; r < w.rows(); ++r) {
                    w(r, c) = static_cast<S>(rng.uniform(-1.0, 1.0)) * limit;
                }
            }
        };
        fill(w_trunk);
        fill(w_adv);
        fill(w_adv_out);
        fill(w_base);
        fill(w_base_out);
    }

    // Visits every parameter tensor in a fixed order (weights, then biases);
    // shared by the optimizer, target sync, and checkpoint code.
    template <class Fn>
    void for_each_tensor(Fn&& fn) {
        fn("trunk.w", w_trunk);
        fn("adv.w", w_adv);
        fn("adv_out.w", w_adv_out);
        fn("base.w", w_base);
        fn("base_out.w", w_base_out);
        fn("trunk.b", b_trunk);
        fn("adv.b", b_adv);
        fn("adv_out.b", b_adv_out);
        fn("base.b", b_base);
        fn("base_out.b", b_base_out);
    }

    struct Cache {
        Mat x;        // batch x input
        Mat h_trunk;  // post-ReLU activations
        Mat h_adv, h_base;
        Mat adv;      // batch x actions
        Vec value;    // batch
        Mat q;        // batch x actions
    };

    // Rows of x are observations.
    Cache forward(const Mat& x) const {
        if (x.cols() != input_dim) throw std::invalid_argument("observation size mismatch");
        Cache c;
        c.x = x;
        c.h_trunk = ((x * w_trunk).rowwise() + b_trunk.transpose()).cwiseMax(S(0));
        c.h_adv = ((c.h_trunk * w_adv).rowwise() + b_adv.transpose()).cwiseMax(S(0));
        c.h_base = ((c.h_trunk * w_base).rowwise() + b_base.transpose()).cwiseMax(S(0));
        c.adv = (c.h_adv * w_adv_out).rowwise() + b_adv_out.transpose();
        c.value = (c.h_base * w_base_out).col(0) + Vec::Constant(x.rows(), b_base_out(0));
        c.q = c.adv;
        if (mean_subtract_advantage) {
            c.q.colwise() -= c.adv.rowwise().mean();
        }
        c.q.colwise() += c.value;
        return c;
    }

    Mat q_values(const Mat& x) const { return forward(x).q; }

    struct Grads {
        Mat w_trunk, w_adv, w_adv_out, w_base, w_base_out;
        Vec b_trunk, b_adv, b_adv_out, b_base, b_base_out;

        template <class Fn>
        void for_each_tensor(Fn&& fn) {
            fn("trunk.w", w_trunk);
            fn("adv.w", w_adv);
            fn("adv_out.w", w_adv_out);
            fn("base.w", w_base);
            fn("base_out.w", w_base_out);
            fn("trunk.b", b_trunk);
            fn("adv.b", b_adv);
            fn("adv_out.b", b_adv_out);
            fn("base.b", b_base);
            fn("base_out.b", b_base_out);
        }
    };

    // Reverse-mode pass for dLoss/dQ given as a batch x actions matrix.
    Grads backward(const Cache& c, const Mat& dq) const {
        Grads g;
        Mat d_adv = dq;
        if (mean_subtract_advantage) {
            d_adv.colwise() -= dq.rowwise().mean();
        }
        Vec d_value = dq.rowwise().sum();

        g.w_adv_out = c.h_adv.transpose() * d_adv;
        g.b_adv_out = d_adv.colwise().sum();
        Mat d_h_adv = (d_adv * w_adv_out.transpose()).array() *
                      (c.h_adv.array() > S(0)).template cast<S>();

        g.w_base_out = c.h_base.transpose() * d_value;
        g.b_base_out = Vec::Constant(1, d_value.sum());
        Mat d_h_base = (d_value * w_base_out.transpose()).array() *
                       (c.h_base.array() > S(0)).template cast<S>();

        g.w_adv = c.h_trunk.transpose() * d_h_adv;
        g.b_adv = d_h_adv.colwise().sum();
        g.w_base = c.h_trunk.transpose() * d_h_base;
        g.b_base = d_h_base.colwise().sum();

        Mat d_h_trunk = (d_h_adv * w_adv.transpose() + d_h_base * w_base.transpose()).array() *
                        (c.h_trunk.array() > S(0)).template cast<S>();
        g.w_trunk = c.x.transpose() * d_h_trunk;
        g.b_trunk = d_h_trunk.colwise().sum();
        return g;
    }
};

template <class S>
struct AdamState {
    std::vector<Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>> m, v;
    long t = 0;

    void init_like(QNet<S>& net) {
        m.clear();
        v.clear();
        net.for_each_tensor([&](const char*, auto& tensor) {
            using M = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
            m.emplace_back(M::Zero(tensor.rows(), tensor.cols()));
            v.emplace_back(M::Zero(tensor.rows(), tensor.cols()));
        });
    }
};

// Bias-corrected ADAM step; epsilon-hat 1e-8.
template <class S>
void adam_update(QNet<S>& net, typename QNet<S>::Grads& grads, AdamState<S>& state, double lr,
                 double beta1, double beta2) {
    state.t += 1;
    S bc1 = S(1.0 - std::pow(beta1, static_cast<double>(state.t)));
    S bc2 = S(1.0 - std::pow(beta2, static_cast<double>(state.t)));
    std::size_t i = 0;
    net.for_each_tensor([&](const char* name, auto& param) {
        auto& m = state.m[i];
        auto& v = state.v[i];
        grads.for_each_tensor([&](const char* gname, auto& grad) {
            if (std::string_view(gname) != name) return;
            m.array() = S(beta1) * m.array() + S(1.0 - beta1) * grad.array();
            v.array() = S(beta2) * v.array() + S(1.0 - beta2) * grad.array().square();
            param.array() -=
                S(lr) * (m.array() / bc1) / ((v.array() / bc2).sqrt() + S(1e-8));
        });
        ++i;
    });
}

// theta' <- (1 - tau) * theta' + tau * theta, elementwise.
template <class S>
void soft_sync(QNet<S>& target, QNet<S>& online, double tau) {
    std::vector<const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>*> src_w;
    std::vector<Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>> srcs;
    online.for_each_tensor([&](const char*, auto& tensor) { srcs.emplace_back(tensor); });
    std::size_t i = 0;
    target.for_each_tensor([&](const char*, auto& tensor) {
        tensor = S(1.0 - tau) * tensor + S(tau) * srcs[i].template cast<S>();
        ++i;
    });
}

}  // namespace tact

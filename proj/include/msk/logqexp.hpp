#pragma once

#include "msk/qexp.hpp"

namespace msk {

// A q-series plus a single rational multiple of log q (log q = 2*pi*i*tau).
// Exactly one log power is carried: second-order equations at a cusp produce
// at most one logarithmic factor. D(log q) = 1, so differentiation lands
// back in plain series.
template <class C>
class LogQExp {
  public:
    using context_type = typename QExp<C>::context_type;

    LogQExp(Rat log_coeff, QExp<C> body) : log_coeff_(std::move(log_coeff)), body_(std::move(body)) {}

    explicit LogQExp(QExp<C> body) : log_coeff_(0), body_(std::move(body)) {}

    const Rat& log_coeff() const { return log_coeff_; }
    const QExp<C>& body() const { return body_; }

    bool is_pure_series() const { return sgn(log_coeff_) == 0; }

    // Collapses to plain series semantics when the log term vanishes.
    const QExp<C>& as_series() const {
        if (!is_pure_series())
            throw series_error("series has a log q term with coefficient " + rat_str(log_coeff_));
        return body_;
    }

    friend QExp<C> theta_derivative(const LogQExp<C>& h) {
        QExp<C> d = theta_derivative(h.body_);
        if (sgn(h.log_coeff_) == 0) return d;
        auto cst = QExp<C>::constant_rat(h.log_coeff_, std::max(1L, rat_floor_scaled(d.order_q(), 1)),
                                         d.context());
        return d + cst;
    }

  private:
    Rat log_coeff_;
    QExp<C> body_;
};

using LogQExpR = LogQExp<Rat>;

}  // namespace msk

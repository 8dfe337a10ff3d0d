#include "camtraj/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "camtraj/common.hpp"

namespace camtraj {

double average_metric(const std::array<double, 6>& six) {
    double sum = 0.0;
    for (double v : six) sum += v;
    return sum / 6.0;
}

namespace {

int compass_bin(double angle_deg) {
    double a = std::fmod(angle_deg + 22.5, 360.0);
    if (a < 0.0) a += 360.0;
    return static_cast<int>(a / 45.0);
}

double circular_diff(double a, double b) {
    double d = std::abs(std::fmod(a - b, 360.0));
    return std::min(d, 360.0 - d);
}

bool course_direction_ok(const DirectionSpec& pred, const DirectionSpec& gt) {
    if (gt.planar_angle && pred.planar_angle)
        return compass_bin(*gt.planar_angle) == compass_bin(*pred.planar_angle);
    if (gt.planar_angle || pred.planar_angle) return false;
    // Pure-radial (or empty) on both sides: compare by zoom sign.
    return gt.radial == pred.radial;
}

bool fine_direction_ok(const DirectionSpec& pred, const DirectionSpec& gt, double eps_angle) {
    if (!course_direction_ok(pred, gt)) return false;
    if (gt.planar_angle &&
        circular_diff(*gt.planar_angle, *pred.planar_angle) > eps_angle)
        return false;
    return gt.radial == pred.radial;
}

}  // namespace

MetricsReport compute_dmr_metrics(const std::vector<TrajectoryScript>& predicted,
                                  const std::vector<TrajectoryScript>& ground_truth,
                                  const InversionTolerances& tol) {
    if (predicted.empty() || predicted.size() != ground_truth.size())
        throw ValidationError("metric corpora must be non-empty and equally sized");

    MetricsReport r;
    for (size_t i = 0; i < predicted.size(); ++i) {
        const auto& pp = predicted[i].primitives;
        const auto& gp = ground_truth[i].primitives;
        const size_t matched = std::min(pp.size(), gp.size());
        const size_t total = std::max(pp.size(), gp.size());

        for (size_t j = 0; j < total; ++j) {
            r.counts_starttime.evaluated += 1;
            r.counts_endtime.evaluated += 1;
            if (j >= matched) continue;  // surplus on one side: wrong start/end
            const MotionPrimitive& p = pp[j];
            const MotionPrimitive& g = gp[j];
            const bool start_ok = std::abs(p.start_time - g.start_time) <= tol.time_tol;
            const bool end_ok = std::abs(p.end_time - g.end_time) <= tol.time_tol;
            r.counts_starttime.correct += start_ok;
            r.counts_endtime.correct += end_ok;
            if (!start_ok || !end_ok) continue;

            r.counts_speed.evaluated += 1;
            r.counts_speed.correct += (p.speed == g.speed);
            r.counts_rotate.evaluated += 1;
            r.counts_rotate.correct += (p.rotate == g.rotate);
            r.counts_d_course.evaluated += 1;
            r.counts_d_course.correct += course_direction_ok(p.direction, g.direction);
            r.counts_d_fine.evaluated += 1;
            r.counts_d_fine.correct +=
                fine_direction_ok(p.direction, g.direction, tol.eps_angle_fine);
        }
    }

    r.m_starttime = r.counts_starttime.percent();
    r.m_endtime = r.counts_endtime.percent();
    r.m_speed = r.counts_speed.percent();
    r.m_rotate = r.counts_rotate.percent();
    r.m_d_course = r.counts_d_course.percent();
    r.m_d_fine = r.counts_d_fine.percent();
    r.avg = average_metric(r.values());
    return r;
}

std::string MetricsReport::to_json() const {
    auto counts = [](const MetricCount& c) {
        return "{\"correct\":" + std::to_string(c.correct) +
               ",\"evaluated\":" + std::to_string(c.evaluated) + "}";
    };
    std::ostringstream out;
    out << "{\"avg\":" << format_sig9(avg) << ",\"m_d_course\":" << format_sig9(m_d_course)
        << ",\"m_d_fine\":" << format_sig9(m_d_fine) << ",\"m_speed\":" << format_sig9(m_speed)
        << ",\"m_rotate\":" << format_sig9(m_rotate)
        << ",\"m_starttime\":" << format_sig9(m_starttime)
        << ",\"m_endtime\":" << format_sig9(m_endtime) << ",\"counts\":{"
        << "\"starttime\":" << counts(counts_starttime)
        << ",\"endtime\":" << counts(counts_endtime) << ",\"speed\":" << counts(counts_speed)
        << ",\"rotate\":" << counts(counts_rotate)
        << ",\"d_course\":" << counts(counts_d_course)
        << ",\"d_fine\":" << counts(counts_d_fine) << "}}";
    return out.str();
}

std::string MetricsReport::to_table() const {
    char buf[256];
    std::ostringstream out;
    out << "  Avg     M_d-course  M_d-fine  M_speed  M_rotate  M_starttime  M_endtime\n";
    std::snprintf(buf, sizeof(buf), "  %-7.3f %-11.3f %-9.3f %-8.3f %-9.3f %-12.3f %-9.3f\n",
                  avg, m_d_course, m_d_fine, m_speed, m_rotate, m_starttime, m_endtime);
    out << buf;
    return out.str();
}

double rot_err(const std::vector<Eigen::Matrix3d>& generated,
               const std::vector<Eigen::Matrix3d>& ground_truth) {
    if (generated.size() != ground_truth.size())
        throw ValidationError("rotation lists differ in length");
    double sum = 0.0;
    for (size_t i = 0; i < generated.size(); ++i) {
        const double tr = (generated[i] * ground_truth[i].transpose()).trace();
        sum += std::acos(std::clamp((tr - 1.0) / 2.0, -1.0, 1.0));
    }
    return sum;
}

double trans_err(const std::vector<Eigen::Vector3d>& generated,
                 const std::vector<Eigen::Vector3d>& ground_truth) {
    if (generated.size() != ground_truth.size())
        throw ValidationError("translation lists differ in length");
    double sum = 0.0;
    for (size_t i = 0; i < generated.size(); ++i)
        sum += (ground_truth[i] - generated[i]).norm();
    return sum;
}

double psnr(const ImageU8& a, const ImageU8& b, double max_value) {
    if (!a.same_shape(b)) throw ValidationError("image dimensions differ");
    if (a.data.empty()) throw ValidationError("empty image");
    double sq = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const double d = double(a.data[i]) - double(b.data[i]);
        sq += d * d;
    }
    const double mse = sq / double(a.data.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(max_value * max_value / mse);
}

namespace {

std::vector<double> to_luma(const ImageU8& img) {
    std::vector<double> luma(static_cast<size_t>(img.width) * img.height);
    if (img.channels == 1) {
        for (size_t i = 0; i < luma.size(); ++i) luma[i] = img.data[i];
    } else {
        for (size_t i = 0; i < luma.size(); ++i) {
            const uint8_t* px = &img.data[i * img.channels];
            luma[i] = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
        }
    }
    return luma;
}

}  // namespace

double ssim(const ImageU8& a, const ImageU8& b, double max_value) {
    if (!a.same_shape(b)) throw ValidationError("image dimensions differ");
    if (a.data.empty()) throw ValidationError("empty image");
    const std::vector<double> la = to_luma(a);
    const std::vector<double> lb = to_luma(b);

    const double c1 = (0.01 * max_value) * (0.01 * max_value);
    const double c2 = (0.03 * max_value) * (0.03 * max_value);
    constexpr int kTile = 8;

    double total = 0.0;
    long windows = 0;
    for (int y0 = 0; y0 < a.height; y0 += kTile) {
        for (int x0 = 0; x0 < a.width; x0 += kTile) {
            const int x1 = std::min(x0 + kTile, a.width);
            const int y1 = std::min(y0 + kTile, a.height);
            const double n = double(x1 - x0) * double(y1 - y0);
            double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
            for (int y = y0; y < y1; ++y) {
                for (int x = x0; x < x1; ++x) {
                    const double va = la[size_t(y) * a.width + x];
                    const double vb = lb[size_t(y) * a.width + x];
                    sa += va;
                    sb += vb;
                    saa += va * va;
                    sbb += vb * vb;
                    sab += va * vb;
                }
            }
            const double mu_a = sa / n;
            const double mu_b = sb / n;
            const double var_a = saa / n - mu_a * mu_a;
            const double var_b = sbb / n - mu_b * mu_b;
            const double cov = sab / n - mu_a * mu_b;
            const double num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2);
            const double den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2);
            total += num / den;
            windows += 1;
        }
    }
    return total / double(windows);
}

}  // namespace camtraj

#include "netgof.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "netgof/config.hpp"
#include "netgof/csv.hpp"
#include "netgof/edge_list.hpp"
#include "netgof/gof_tests.hpp"
#include "netgof/graph.hpp"
#include "netgof/graphon.hpp"
#include "netgof/logistic.hpp"
#include "netgof/prob_matrix.hpp"
#include "netgof/sampling.hpp"

using namespace netgof;

namespace {

thread_local std::string g_last_error;

ngf_status status_of(errc code) {
    switch (code) {
    case errc::invalid_argument: return NGF_EINVAL;
    case errc::parse: return NGF_EPARSE;
    case errc::dimension: return NGF_EDIM;
    case errc::range: return NGF_ERANGE;
    case errc::degenerate: return NGF_EDEGENERATE;
    case errc::numeric: return NGF_ENUMERIC;
    case errc::io: return NGF_EIO;
    }
    return NGF_ENUMERIC;
}

template <typename Fn> ngf_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return NGF_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return NGF_ENUMERIC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NGF_ENUMERIC;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void fill_result(const TestResult& r, ngf_test_result* out) {
    out->statistic = r.statistic;
    out->null_mean = r.null_mean;
    out->null_sd = r.null_sd;
    out->z = r.z;
    out->p_value = r.p_value;
    out->alpha = r.alpha;
    out->reject = r.reject ? 1 : 0;
}

} // namespace

struct ngf_graph {
    Graph graph;
};

struct ngf_model {
    bool is_kernel = false;
    ProbMatrix matrix;
    Graphon kernel;
};

struct ngf_logistic {
    LogisticNull fit;
};

extern "C" {

const char* ngf_version(void) { return "1.0.0"; }

const char* ngf_last_error(void) { return g_last_error.c_str(); }

void ngf_string_free(char* s) { delete[] s; }

ngf_status ngf_write_file_atomic(const char* path, const char* content) {
    return guarded([&] {
        if (!path || !content)
            fail(errc::invalid_argument, "null argument");
        write_file_atomic(path, content);
    });
}

ngf_status ngf_graph_read_file(const char* path, int n_hint, ngf_graph** out) {
    return guarded([&] {
        if (!path || !out)
            fail(errc::invalid_argument, "null argument");
        Graph g = n_hint > 0 ? read_edge_list_file(path, n_hint) : read_edge_list_file(path);
        *out = new ngf_graph{std::move(g)};
    });
}

ngf_status ngf_graph_from_edges(int n, const int32_t* endpoints, int64_t edges, ngf_graph** out) {
    return guarded([&] {
        if (!out || (edges > 0 && !endpoints))
            fail(errc::invalid_argument, "null argument");
        GraphBuilder builder(n);
        for (int64_t e = 0; e < edges; ++e)
            builder.add_edge(endpoints[2 * e], endpoints[2 * e + 1]);
        *out = new ngf_graph{builder.build()};
    });
}

void ngf_graph_free(ngf_graph* g) { delete g; }

int ngf_graph_nodes(const ngf_graph* g) { return g ? g->graph.node_count() : 0; }

int64_t ngf_graph_edges(const ngf_graph* g) { return g ? g->graph.edge_count() : 0; }

ngf_status ngf_graph_write_file(const ngf_graph* g, const char* path) {
    return guarded([&] {
        if (!g || !path)
            fail(errc::invalid_argument, "null argument");
        write_file_atomic(path, edge_list_text(g->graph));
    });
}

ngf_status ngf_model_read_file(const char* path, ngf_model** out) {
    return guarded([&] {
        if (!path || !out)
            fail(errc::invalid_argument, "null argument");
        std::string text = read_file(path);
        auto model = std::make_unique<ngf_model>();
        std::size_t first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            model->kernel = Graphon::from_json(text);
            model->is_kernel = true;
        } else {
            std::istringstream in(text);
            model->matrix = read_prob_matrix_csv(in);
        }
        *out = model.release();
    });
}

void ngf_model_free(ngf_model* m) { delete m; }

int ngf_model_is_kernel(const ngf_model* m) { return m && m->is_kernel ? 1 : 0; }

int ngf_model_nodes(const ngf_model* m) { return m && !m->is_kernel ? m->matrix.node_count() : 0; }

ngf_status ngf_model_sample(const ngf_model* m, int n, uint64_t seed, uint64_t stream,
                            ngf_graph** out_g, char** out_latent_csv) {
    return guarded([&] {
        if (!m || !out_g)
            fail(errc::invalid_argument, "null argument");
        RngSpec rng{seed, stream};
        if (m->is_kernel) {
            if (n < 1)
                fail(errc::invalid_argument, "kernel models need an explicit node count");
            EgSample s = sample_eg(m->kernel, n, rng);
            if (out_latent_csv) {
                std::ostringstream csv;
                csv << "i,u\n";
                for (std::size_t i = 0; i < s.latent.size(); ++i)
                    csv << i << ',' << fmt_g10(s.latent[i]) << '\n';
                *out_latent_csv = dup_string(csv.str());
            }
            *out_g = new ngf_graph{std::move(s.graph)};
        } else {
            if (n > 0 && n != m->matrix.node_count())
                fail(errc::dimension, "requested node count does not match the matrix");
            *out_g = new ngf_graph{sample_her(m->matrix, rng)};
            if (out_latent_csv)
                *out_latent_csv = nullptr;
        }
    });
}

ngf_status ngf_test_her(const ngf_graph* g, const ngf_model* p0, double alpha,
                        ngf_test_result* out) {
    return guarded([&] {
        if (!g || !p0 || !out)
            fail(errc::invalid_argument, "null argument");
        if (p0->is_kernel)
            fail(errc::invalid_argument, "this test needs a probability matrix");
        fill_result(test_her(g->graph, p0->matrix, alpha), out);
    });
}

ngf_status ngf_test_dv_er(const ngf_graph* g, double alpha, ngf_test_result* out) {
    return guarded([&] {
        if (!g || !out)
            fail(errc::invalid_argument, "null argument");
        fill_result(test_dv_er(g->graph, alpha), out);
    });
}

ngf_status ngf_test_eg(const ngf_graph* g, const ngf_model* phi0, double alpha,
                       ngf_test_result* out) {
    return guarded([&] {
        if (!g || !phi0 || !out)
            fail(errc::invalid_argument, "null argument");
        if (!phi0->is_kernel)
            fail(errc::invalid_argument, "this test needs a kernel model");
        fill_result(test_eg(g->graph, phi0->kernel, alpha), out);
    });
}

ngf_status ngf_power_her(const ngf_model* p0, const ngf_model* p, double alpha, double* out) {
    return guarded([&] {
        if (!p0 || !p || !out)
            fail(errc::invalid_argument, "null argument");
        if (p0->is_kernel || p->is_kernel)
            fail(errc::invalid_argument, "this power formula needs probability matrices");
        *out = power_her(p0->matrix, p->matrix, alpha);
    });
}

ngf_status ngf_power_eg(const ngf_model* phi0, const ngf_model* phi, int n, double alpha,
                        double* out) {
    return guarded([&] {
        if (!phi0 || !phi || !out)
            fail(errc::invalid_argument, "null argument");
        if (!phi0->is_kernel || !phi->is_kernel)
            fail(errc::invalid_argument, "this power formula needs kernel models");
        *out = power_eg(phi0->kernel, phi->kernel, n, alpha);
    });
}

ngf_status ngf_fit_logistic_file(const ngf_graph* g, const char* covariates_path,
                                 ngf_logistic** out) {
    return guarded([&] {
        if (!g || !covariates_path || !out)
            fail(errc::invalid_argument, "null argument");
        CovariateTable table = read_covariates_csv_file(covariates_path);
        *out = new ngf_logistic{fit_logistic_null(g->graph, table)};
    });
}

void ngf_logistic_free(ngf_logistic* f) { delete f; }

int ngf_logistic_dim(const ngf_logistic* f) {
    return f ? static_cast<int>(f->fit.beta.size()) : 0;
}

double ngf_logistic_coef(const ngf_logistic* f, int k) {
    if (!f || k < 0 || static_cast<std::size_t>(k) >= f->fit.beta.size())
        return 0.0;
    return f->fit.beta[static_cast<std::size_t>(k)];
}

double ngf_logistic_stderr(const ngf_logistic* f, int k) {
    if (!f || k < 0 || static_cast<std::size_t>(k) >= f->fit.std_errors.size())
        return 0.0;
    return f->fit.std_errors[static_cast<std::size_t>(k)];
}

int ngf_logistic_converged(const ngf_logistic* f) { return f && f->fit.converged ? 1 : 0; }

int ngf_logistic_iterations(const ngf_logistic* f) { return f ? f->fit.iterations : 0; }

double ngf_logistic_score_norm(const ngf_logistic* f) { return f ? f->fit.score_norm : 0.0; }

ngf_status ngf_logistic_test(const ngf_graph* g, const ngf_logistic* f, double alpha,
                             ngf_test_result* out) {
    return guarded([&] {
        if (!g || !f || !out)
            fail(errc::invalid_argument, "null argument");
        fill_result(test_her(g->graph, f->fit.fitted, alpha), out);
    });
}

ngf_status ngf_study_run(const char* config_text, int threads, char** out_csv,
                         char** out_config_echo) {
    return guarded([&] {
        if (!config_text || !out_csv)
            fail(errc::invalid_argument, "null argument");
        StudyOutput result = run_study_from_config(config_text, threads);
        *out_csv = dup_string(result.csv);
        if (out_config_echo)
            *out_config_echo = dup_string(result.config_echo);
    });
}

} // extern "C"

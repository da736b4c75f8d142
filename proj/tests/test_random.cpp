#include "common.hpp"

#include <atomic>

#include "cat0/parallel.hpp"

using namespace testing_cat0;

TEST(Random, CounterHashIsPure) {
    EXPECT_EQ(counter_hash(1, 2, 3), counter_hash(1, 2, 3));
    EXPECT_NE(counter_hash(1, 2, 3), counter_hash(1, 2, 4));
    EXPECT_NE(counter_hash(1, 2, 3), counter_hash(1, 3, 3));
    EXPECT_NE(counter_hash(1, 2, 3), counter_hash(2, 2, 3));
    EXPECT_EQ(normal_pair(5, 0, 10), normal_pair(5, 0, 10));
}

TEST(Random, UniformAndNormalMoments) {
    CounterRng rng(42, 0);
    const int N = 200000;
    double su = 0, suu = 0, sn = 0, snn = 0, lo = 1, hi = 0;
    for (int i = 0; i < N; ++i) {
        const double u = rng.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        su += u;
        suu += u * u;
        const double n = rng.normal();
        sn += n;
        snn += n * n;
    }
    EXPECT_GE(lo, 0.0);
    EXPECT_LT(hi, 1.0);
    EXPECT_NEAR(su / N, 0.5, 0.005);
    EXPECT_NEAR(suu / N - 0.25, 1.0 / 12, 0.005);
    EXPECT_NEAR(sn / N, 0.0, 0.01);
    EXPECT_NEAR(snn / N, 1.0, 0.01);
}

TEST(Random, DriverIncrementsScaleWithDt) {
    const BrownianDriver a(3, 1e-2), b(3, 1e-4);
    const Vec2 ia = a.increment(streams::B, 7), ib = b.increment(streams::B, 7);
    EXPECT_NEAR(ia.x, 10 * ib.x, 1e-15);
    EXPECT_NE(a.increment(streams::A, 7), ia);
}

TEST(Parallel, CoversEveryIndexOnce) {
    for (unsigned threads : {1u, 2u, 5u}) {
        std::vector<std::atomic<int>> hits(97);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    }
}

TEST(Parallel, RethrowsFirstError) {
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 4) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

TEST(Parallel, ResolveThreads) {
    EXPECT_EQ(resolve_threads(3), 3u);
    ::setenv("CAT0_PURSUIT_THREADS", "2", 1);
    EXPECT_EQ(resolve_threads(0), 2u);
    ::unsetenv("CAT0_PURSUIT_THREADS");
    EXPECT_GE(resolve_threads(0), 1u);
}

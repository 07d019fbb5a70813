// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/transport.hpp"

#include "elephant/core/error.hpp"
#include "elephant/dfb/head.hpp"
#include "elephant/scene/generator.hpp"

#include <doctest.h>

#include <thread>

using namespace elephant;
using namespace elephant::dfb;

TEST_CASE("in-process pairs deliver in order and drain after close") {
  auto [a, b] = make_in_process_pair();
  a->send(Hello{1});
  a->send(Hello{2});
  a->close();
  auto m1 = b->receive(), m2 = b->receive();
  REQUIRE(m1);
  REQUIRE(m2);
  CHECK(std::get<Hello>(*m1).workerId == 1);
  CHECK(std::get<Hello>(*m2).workerId == 2);
  CHECK_FALSE(b->receive());
  b->send(Hello{3}); // dropped, not an error
}

TEST_CASE("endpoint parsing") {
  const Endpoint e = parse_endpoint("example.org:9000");
  CHECK(e.host == "example.org");
  CHECK(e.port == 9000);
  CHECK(parse_endpoint(":7").host == "0.0.0.0");
  CHECK_THROWS_AS(parse_endpoint("nohost"), Error);
  CHECK_THROWS_AS(parse_endpoint("h:99999"), Error);
  CHECK_THROWS_AS(parse_endpoint("h:x"), Error);
}

TEST_CASE("worker specs") {
  CHECK(parse_worker_spec("3").count == 3);
  CHECK_FALSE(parse_worker_spec("local:2").tcp);
  CHECK(parse_worker_spec("local:2").count == 2);
  const WorkerSpec t = parse_worker_spec("tcp:0.0.0.0:9100:4");
  CHECK(t.tcp);
  CHECK(t.count == 4);
  CHECK(t.listen.host == "0.0.0.0");
  CHECK(t.listen.port == 9100);
  for (const char *bad : {"0", "x", "local:", "tcp:9100", "tcp:h:1:0", "2x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_worker_spec(bad), Error);
  }
}

TEST_CASE("tcp carries the same frames") {
  TcpListener listener({"127.0.0.1", 0});
  std::unique_ptr<Connection> server;
  std::thread acceptor([&] { server = listener.accept(); });
  auto client = tcp_connect({"127.0.0.1", listener.port()});
  acceptor.join();
  render::FrameBuffer fb(64, 64);
  fb.color[5] = Rgb{1.5f, 2.f, 3.f};
  const TileResult t = make_tile_result(fb, 3, 0, 1);
  client->send(t);
  client->send(Shutdown{});
  auto got = server->receive();
  REQUIRE(got);
  CHECK(std::get<TileResult>(*got) == t);
  CHECK(std::holds_alternative<Shutdown>(*server->receive()));
  client->close();
  CHECK_FALSE(server->receive());
}

TEST_CASE("binding a used port fails") {
  TcpListener first({"127.0.0.1", 0});
  CHECK_THROWS_AS(TcpListener({"127.0.0.1", first.port()}), BindFailure);
  CHECK_THROWS_AS(TcpListener({"203.0.113.1", 1}), BindFailure);
}

TEST_CASE("tcp workers produce the same frame as in-process workers") {
  const auto scene = scene::generate_challenge_scene(scene::preset("mini"), 8).scene;
  HeadOptions o;
  o.width = 130;
  o.height = 70;
  o.config.deterministic = true;
  o.denoise = false;

  LocalWorkers pool(2);
  Head local(pool.take_connections(), scene_source(scene, {}), o);
  local.step();
  local.step();

  TcpListener listener({"127.0.0.1", 0});
  std::vector<std::thread> workers;
  for (uint32_t id = 0; id < 2; ++id)
    workers.emplace_back([&, id] {
      auto c = tcp_connect({"127.0.0.1", listener.port()});
      run_worker(*c, id);
    });
  std::vector<std::unique_ptr<Connection>> conns;
  conns.push_back(listener.accept());
  conns.push_back(listener.accept());
  Head remote(std::move(conns), scene_source(scene, {}), o);
  remote.step();
  remote.step();
  CHECK(remote.framebuffer().identical(local.framebuffer()));
  remote.shutdown();
  for (auto &w : workers) w.join();
  local.shutdown();
  pool.join();
}

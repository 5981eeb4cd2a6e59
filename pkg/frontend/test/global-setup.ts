/** Boots the real planning service once for the whole test run.
 *
 * The server address is handed to workers through process.env, which the
 * test processes inherit; unit tests that never touch the network simply
 * ignore it.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtemp, rm } from "node:fs/promises";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";

const STARTUP_MS = 60_000;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.once("error", reject);
    srv.listen(0, "127.0.0.1", () => {
      const address = srv.address();
      if (address === null || typeof address === "string") {
        srv.close();
        reject(new Error("no port assigned"));
        return;
      }
      srv.close(() => resolve(address.port));
    });
  });
}

async function waitUntilHealthy(base: string, proc: ChildProcess, log: () => string) {
  const deadline = Date.now() + STARTUP_MS;
  while (Date.now() < deadline) {
    if (proc.exitCode !== null) {
      throw new Error(`service exited with ${proc.exitCode} before start:\n${log()}`);
    }
    try {
      const res = await fetch(`${base}/healthz`);
      if (res.ok) {
        return;
      }
    } catch {
      // not listening yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error(`service did not become healthy in ${STARTUP_MS} ms:\n${log()}`);
}

export default async function setup(): Promise<() => Promise<void>> {
  const dataDir = await mkdtemp(join(tmpdir(), "concord-ui-"));
  const port = await freePort();
  const proc = spawn(
    "python3",
    [
      "-m",
      "concord.cli",
      "serve",
      "--host",
      "127.0.0.1",
      "--port",
      String(port),
      "--data-dir",
      dataDir,
      "--backend",
      "reference",
    ],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  let output = "";
  proc.stdout?.on("data", (chunk: Buffer) => {
    output += chunk.toString();
  });
  proc.stderr?.on("data", (chunk: Buffer) => {
    output += chunk.toString();
  });

  const base = `http://127.0.0.1:${port}`;
  try {
    await waitUntilHealthy(base, proc, () => output);
  } catch (err) {
    proc.kill("SIGKILL");
    await rm(dataDir, { recursive: true, force: true });
    throw err;
  }
  process.env.CONCORD_UI_API = base;

  return async () => {
    const gone = new Promise<void>((resolve) => {
      proc.once("exit", () => resolve());
    });
    proc.kill("SIGTERM");
    const timeout = new Promise<void>((resolve) => setTimeout(resolve, 5_000));
    await Promise.race([gone, timeout]);
    if (proc.exitCode === null) {
      proc.kill("SIGKILL");
    }
    await rm(dataDir, { recursive: true, force: true });
  };
}

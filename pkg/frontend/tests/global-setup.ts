/** Boots the real game API for the end-to-end tests. */

import { spawn, ChildProcess } from "node:child_process";

const PORT = 8931;
export const API_BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;

async function waitForServer(timeoutMs = 20_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${API_BASE}/openapi.json`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("game API did not become ready");
}

export default async function setup(): Promise<() => void> {
  server = spawn(
    "python3",
    [
      "-c",
      [
        "import uvicorn",
        "from weathergame.api import create_app",
        `uvicorn.run(create_app(master_seed=7), host='127.0.0.1', port=${PORT}, log_level='warning')`,
      ].join("; "),
    ],
    { stdio: ["ignore", "inherit", "inherit"] },
  );
  process.env.WEATHERGAME_API_BASE = API_BASE;
  await waitForServer();
  return () => {
    server?.kill();
  };
}

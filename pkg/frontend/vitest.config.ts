import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    exclude: process.env.RUN_E2E ? [] : ["tests/e2e.test.ts"],
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});

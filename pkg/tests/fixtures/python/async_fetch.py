import asyncio


async def fetch_all(urls):
    await asyncio.sleep(0)
    return [u.upper() for u in urls]
